#pragma once

#include <stdexcept>
#include <string>

namespace lss {

// Error taxonomy. Config/usage errors are distinct from numerical failures so the
// CLI can map them to different exit codes (2 vs 3).
struct ConfigInvalid : std::runtime_error {
    explicit ConfigInvalid(const std::string& what) : std::runtime_error(what) {}
};

struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

struct NonIntegrableTail : NumericalError {
    explicit NonIntegrableTail(const std::string& what) : NumericalError(what) {}
};
struct DivergentIntegral : NumericalError {
    explicit DivergentIntegral(const std::string& what) : NumericalError(what) {}
};
struct DivergentSeries : NumericalError {
    explicit DivergentSeries(const std::string& what) : NumericalError(what) {}
};
struct DivergentMoment : NumericalError {
    explicit DivergentMoment(const std::string& what) : NumericalError(what) {}
};
struct NotConverged : NumericalError {
    explicit NotConverged(const std::string& what) : NumericalError(what) {}
};
struct MissingJumpList : NumericalError {
    explicit MissingJumpList(const std::string& what) : NumericalError(what) {}
};
struct OutOfWindow : NumericalError {
    explicit OutOfWindow(const std::string& what) : NumericalError(what) {}
};
struct InsufficientWindow : NumericalError {
    explicit InsufficientWindow(const std::string& what) : NumericalError(what) {}
};
struct TooShort : NumericalError {
    explicit TooShort(const std::string& what) : NumericalError(what) {}
};
struct CriticalRegime : NumericalError {
    explicit CriticalRegime(const std::string& what) : NumericalError(what) {}
};
struct ZeroVariation : NumericalError {
    explicit ZeroVariation(const std::string& what) : NumericalError(what) {}
};
struct ZeroDenominator : NumericalError {
    explicit ZeroDenominator(const std::string& what) : NumericalError(what) {}
};
struct NonPositiveRatio : NumericalError {
    explicit NonPositiveRatio(const std::string& what) : NumericalError(what) {}
};

} // namespace lss

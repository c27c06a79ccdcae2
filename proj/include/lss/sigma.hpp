#pragma once

#include <string>
#include <variant>
#include <vector>

#include "lss/driver.hpp"
#include "lss/rng.hpp"

namespace lss {

struct ConstantSigma {
    double value = 1.0;
};

// shape "linear": a + b*s; shape "cosine": a + b*cos(w*s)
struct DeterministicSigma {
    std::string shape = "linear";
    double a = 1.0;
    double b = 0.0;
    double w = 1.0;
};

// Mean-reverting cadlag process driven by compound Poisson jumps, started at its
// mean at the window start.
struct OuSigma {
    double mean = 1.0;
    double reversion = 1.0;
    CompoundPoissonDriver jumps;
};

// Piecewise constant: levels[i] on [times[i-1], times[i]), with times strictly
// increasing and levels.size() == times.size() + 1.
struct StepSigma {
    std::vector<double> times;
    std::vector<double> levels;
};

using SigmaSpec = std::variant<ConstantSigma, DeterministicSigma, OuSigma, StepSigma>;

void validate(const SigmaSpec& spec);
bool is_random(const SigmaSpec& spec);

// Realized volatility path on a window. Evaluation is exact for every spec:
// piecewise forms use their breakpoints, the jump-driven form stores post-jump
// values and decays analytically between jumps.
class SigmaPath {
  public:
    SigmaPath() = default;

    double window_start() const { return ws_; }
    double window_end() const { return we_; }

    double value(double s) const;      // cadlag version
    double left_limit(double s) const; // limit from below

    // integral_{t0}^{t1} |sigma_s|^p ds
    double power_integral(double p, double t0, double t1) const;

    // Upper bound for sup |sigma| over the window; exact except for the cosine
    // shape, where it is |a| + |b|.
    double sup_abs() const;

    // Discontinuity times inside the window, ascending.
    const std::vector<double>& breakpoints() const { return breaks_; }

    friend SigmaPath simulate_sigma(Rng& rng, const SigmaSpec& spec, double window_start,
                                    double window_end);

  private:
    SigmaSpec spec_;
    double ws_ = 0.0, we_ = 1.0;
    std::vector<double> breaks_;
    std::vector<double> post_; // value just after breaks_[i] (jump-driven and step forms)
    double start_value_ = 1.0;
};

// Draws the path for random specs; deterministic specs ignore the generator state.
SigmaPath simulate_sigma(Rng& rng, const SigmaSpec& spec, double window_start, double window_end);

} // namespace lss

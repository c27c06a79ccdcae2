#pragma once

#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "lss/rng.hpp"

namespace lss {

// Symmetric beta-stable driver: increments over dt have characteristic function
// exp(-gamma_scale^beta * dt * |u|^beta).
struct StableDriver {
    double beta;        // (0, 2)
    double gamma_scale; // > 0
};

// Jump-size laws for the compound Poisson driver. All are symmetric: a size is
// drawn from the positive law and a fair sign is attached.
struct RademacherLaw {
    double size; // > 0
};
struct TwoSidedParetoLaw {
    double tail_index; // > 0
    double min_size;   // > 0
};
struct AtomsLaw {
    // (size > 0, probability); probabilities sum to 1
    std::vector<std::pair<double, double>> atoms;
};
using JumpLaw = std::variant<RademacherLaw, TwoSidedParetoLaw, AtomsLaw>;

struct CompoundPoissonDriver {
    double rate; // > 0, expected jumps per unit time
    JumpLaw law;
};

using DriverSpec = std::variant<StableDriver, CompoundPoissonDriver>;

void validate(const DriverSpec& spec); // throws ConfigInvalid

struct JumpRecord {
    double time;
    double size;
};

// A driver realization on [window_start, window_end]. Compound Poisson paths carry
// the exact jump list; grid increments are derived on demand via bin_jumps.
struct DriverPath {
    double window_start = 0.0;
    double window_end = 0.0;
    bool has_jumps = false;
    std::vector<JumpRecord> jumps; // ascending in time
};

double sample_stable(Rng& rng, double beta, double scale);

// count iid increments for grid cells of width grid_step.
std::vector<double> simulate_stable_increments(Rng& rng, double beta, double gamma_scale,
                                               double grid_step, std::size_t count);

DriverPath simulate_compound_poisson(Rng& rng, const CompoundPoissonDriver& spec,
                                     double window_start, double window_end);

// Partition into (|size| > threshold, |size| <= threshold), preserving order.
std::pair<std::vector<JumpRecord>, std::vector<JumpRecord>>
split_by_threshold(const std::vector<JumpRecord>& jumps, double threshold);

// Cell c collects jump sizes with time in (grid_start + c*step, grid_start + (c+1)*step].
std::vector<double> bin_jumps(const std::vector<JumpRecord>& jumps, double grid_start,
                              double grid_step, std::size_t count);

// Activity index of the driver: beta for the stable family, 0 for finite-activity
// compound Poisson.
double blumenthal_getoor(const DriverSpec& spec);

} // namespace lss

#include "lss/driver.hpp"

#include <algorithm>
#include <cmath>

#include "lss/errors.hpp"

namespace lss {

void validate(const DriverSpec& spec) {
    if (const auto* st = std::get_if<StableDriver>(&spec)) {
        if (!(st->beta > 0.0 && st->beta < 2.0))
            throw ConfigInvalid("driver: stable index must be in (0, 2)");
        if (!(st->gamma_scale > 0.0)) throw ConfigInvalid("driver: scale must be > 0");
        return;
    }
    const auto& cp = std::get<CompoundPoissonDriver>(spec);
    if (!(cp.rate > 0.0)) throw ConfigInvalid("driver: jump rate must be > 0");
    if (const auto* r = std::get_if<RademacherLaw>(&cp.law)) {
        if (!(r->size > 0.0)) throw ConfigInvalid("driver: jump size must be > 0");
    } else if (const auto* p = std::get_if<TwoSidedParetoLaw>(&cp.law)) {
        if (!(p->tail_index > 0.0)) throw ConfigInvalid("driver: pareto tail index must be > 0");
        if (!(p->min_size > 0.0)) throw ConfigInvalid("driver: pareto min size must be > 0");
    } else {
        const auto& at = std::get<AtomsLaw>(cp.law);
        if (at.atoms.empty()) throw ConfigInvalid("driver: atom law needs at least one atom");
        double mass = 0.0;
        for (const auto& [size, prob] : at.atoms) {
            if (size == 0.0) throw ConfigInvalid("driver: atom sizes must be nonzero");
            if (!(prob > 0.0)) throw ConfigInvalid("driver: atom probabilities must be > 0");
            mass += prob;
        }
        if (std::abs(mass - 1.0) > 1e-12)
            throw ConfigInvalid("driver: atom probabilities must sum to 1");
    }
}

double sample_stable(Rng& rng, double beta, double scale) { return rng.stable(beta, scale); }

std::vector<double> simulate_stable_increments(Rng& rng, double beta, double gamma_scale,
                                               double grid_step, std::size_t count) {
    if (!(grid_step > 0.0)) throw ConfigInvalid("increments: grid step must be > 0");
    const double cell_scale = gamma_scale * std::pow(grid_step, 1.0 / beta);
    std::vector<double> out(count);
    for (auto& v : out) v = rng.stable(beta, cell_scale);
    return out;
}

namespace {

double sample_jump(Rng& rng, const JumpLaw& law) {
    if (const auto* r = std::get_if<RademacherLaw>(&law)) return rng.sign() * r->size;
    if (const auto* p = std::get_if<TwoSidedParetoLaw>(&law))
        return rng.sign() * rng.pareto(p->tail_index, p->min_size);
    const auto& at = std::get<AtomsLaw>(law);
    double u = rng.uniform01();
    for (const auto& [size, prob] : at.atoms) {
        if (u < prob) return size;
        u -= prob;
    }
    return at.atoms.back().first;
}

} // namespace

DriverPath simulate_compound_poisson(Rng& rng, const CompoundPoissonDriver& spec,
                                     double window_start, double window_end) {
    if (!(window_end > window_start))
        throw ConfigInvalid("compound poisson: window must have positive length");
    validate(DriverSpec{spec});
    DriverPath path;
    path.window_start = window_start;
    path.window_end = window_end;
    path.has_jumps = true;
    const std::uint64_t n_jumps = rng.poisson(spec.rate * (window_end - window_start));
    path.jumps.reserve(n_jumps);
    for (std::uint64_t i = 0; i < n_jumps; ++i) {
        JumpRecord rec;
        rec.time = rng.uniform(window_start, window_end);
        rec.size = sample_jump(rng, spec.law);
        path.jumps.push_back(rec);
    }
    std::sort(path.jumps.begin(), path.jumps.end(),
              [](const JumpRecord& a, const JumpRecord& b) { return a.time < b.time; });
    return path;
}

std::pair<std::vector<JumpRecord>, std::vector<JumpRecord>>
split_by_threshold(const std::vector<JumpRecord>& jumps, double threshold) {
    if (!(threshold > 0.0)) throw ConfigInvalid("split_by_threshold: threshold must be > 0");
    std::pair<std::vector<JumpRecord>, std::vector<JumpRecord>> out;
    for (const auto& j : jumps)
        (std::abs(j.size) > threshold ? out.first : out.second).push_back(j);
    return out;
}

std::vector<double> bin_jumps(const std::vector<JumpRecord>& jumps, double grid_start,
                              double grid_step, std::size_t count) {
    if (!(grid_step > 0.0)) throw ConfigInvalid("bin_jumps: grid step must be > 0");
    std::vector<double> cells(count, 0.0);
    for (const auto& j : jumps) {
        // cell c covers (grid_start + c h, grid_start + (c+1) h]
        const double rel = (j.time - grid_start) / grid_step;
        const auto c = static_cast<long long>(std::ceil(rel)) - 1;
        if (c >= 0 && c < static_cast<long long>(count)) cells[static_cast<std::size_t>(c)] += j.size;
    }
    return cells;
}

double blumenthal_getoor(const DriverSpec& spec) {
    if (const auto* st = std::get_if<StableDriver>(&spec)) return st->beta;
    return 0.0;
}

} // namespace lss

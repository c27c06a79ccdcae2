#include "lss/sigma.hpp"

#include <algorithm>
#include <cmath>

#include "lss/errors.hpp"
#include "lss/quadrature.hpp"

namespace lss {

void validate(const SigmaSpec& spec) {
    if (const auto* d = std::get_if<DeterministicSigma>(&spec)) {
        if (d->shape != "linear" && d->shape != "cosine")
            throw ConfigInvalid("sigma: shape must be linear or cosine");
        return;
    }
    if (const auto* ou = std::get_if<OuSigma>(&spec)) {
        if (!(ou->reversion > 0.0)) throw ConfigInvalid("sigma: reversion must be > 0");
        validate(DriverSpec{ou->jumps});
        return;
    }
    if (const auto* st = std::get_if<StepSigma>(&spec)) {
        if (st->levels.size() != st->times.size() + 1)
            throw ConfigInvalid("sigma: need times.size()+1 levels");
        for (std::size_t i = 1; i < st->times.size(); ++i)
            if (!(st->times[i] > st->times[i - 1]))
                throw ConfigInvalid("sigma: step times must be strictly increasing");
    }
}

bool is_random(const SigmaSpec& spec) { return std::holds_alternative<OuSigma>(spec); }

SigmaPath simulate_sigma(Rng& rng, const SigmaSpec& spec, double window_start, double window_end) {
    validate(spec);
    if (!(window_end > window_start)) throw ConfigInvalid("sigma: window must have positive length");
    SigmaPath path;
    path.spec_ = spec;
    path.ws_ = window_start;
    path.we_ = window_end;
    if (const auto* st = std::get_if<StepSigma>(&spec)) {
        path.start_value_ = st->levels.front();
        for (std::size_t i = 0; i < st->times.size(); ++i) {
            const double t = st->times[i];
            if (t <= window_start || t > window_end) continue;
            path.breaks_.push_back(t);
            path.post_.push_back(st->levels[i + 1]);
        }
        return path;
    }
    if (const auto* ou = std::get_if<OuSigma>(&spec)) {
        path.start_value_ = ou->mean;
        DriverPath jumps = simulate_compound_poisson(rng, ou->jumps, window_start, window_end);
        double level = ou->mean; // value just after the previous breakpoint
        double prev_t = window_start;
        for (const auto& j : jumps.jumps) {
            const double pre = ou->mean + (level - ou->mean) * std::exp(-ou->reversion * (j.time - prev_t));
            level = pre + j.size;
            prev_t = j.time;
            path.breaks_.push_back(j.time);
            path.post_.push_back(level);
        }
        return path;
    }
    if (const auto* c = std::get_if<ConstantSigma>(&spec)) path.start_value_ = c->value;
    return path;
}

double SigmaPath::value(double s) const {
    s = std::clamp(s, ws_, we_);
    if (const auto* d = std::get_if<DeterministicSigma>(&spec_))
        return (d->shape == "linear") ? d->a + d->b * s : d->a + d->b * std::cos(d->w * s);
    if (const auto* c = std::get_if<ConstantSigma>(&spec_)) return c->value;
    // piecewise: last breakpoint <= s
    const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), s);
    if (it == breaks_.begin()) {
        if (const auto* ou = std::get_if<OuSigma>(&spec_))
            return ou->mean + (start_value_ - ou->mean) * std::exp(-ou->reversion * (s - ws_));
        return start_value_;
    }
    const auto idx = static_cast<std::size_t>(it - breaks_.begin()) - 1;
    if (const auto* ou = std::get_if<OuSigma>(&spec_))
        return ou->mean + (post_[idx] - ou->mean) * std::exp(-ou->reversion * (s - breaks_[idx]));
    return post_[idx];
}

double SigmaPath::left_limit(double s) const {
    s = std::clamp(s, ws_, we_);
    const auto it = std::lower_bound(breaks_.begin(), breaks_.end(), s);
    if (it == breaks_.end() || *it != s) return value(s);
    if (it == breaks_.begin()) {
        if (const auto* ou = std::get_if<OuSigma>(&spec_))
            return ou->mean + (start_value_ - ou->mean) * std::exp(-ou->reversion * (s - ws_));
        return start_value_;
    }
    const auto idx = static_cast<std::size_t>(it - breaks_.begin()) - 1;
    if (const auto* ou = std::get_if<OuSigma>(&spec_))
        return ou->mean + (post_[idx] - ou->mean) * std::exp(-ou->reversion * (s - breaks_[idx]));
    return post_[idx];
}

double SigmaPath::power_integral(double p, double t0, double t1) const {
    if (!(p > 0.0)) throw ConfigInvalid("sigma power integral: p must be > 0");
    t0 = std::clamp(t0, ws_, we_);
    t1 = std::clamp(t1, ws_, we_);
    if (t1 <= t0) return 0.0;

    std::vector<double> cuts{t0};
    for (double b : breaks_)
        if (b > t0 && b < t1) cuts.push_back(b);
    cuts.push_back(t1);

    const bool piecewise_const = !std::holds_alternative<OuSigma>(spec_) &&
                                 !std::holds_alternative<DeterministicSigma>(spec_);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        if (piecewise_const) {
            total += std::pow(std::abs(value(a)), p) * (b - a);
        } else {
            auto f = [&](double s) { return std::pow(std::abs(value(s)), p); };
            const double tol = 1e-12 * std::max(1.0, std::pow(sup_abs(), p)) * (b - a) + 1e-300;
            total += adaptive_simpson(f, a, b, tol);
        }
    }
    return total;
}

double SigmaPath::sup_abs() const {
    if (const auto* c = std::get_if<ConstantSigma>(&spec_)) return std::abs(c->value);
    if (const auto* d = std::get_if<DeterministicSigma>(&spec_)) {
        if (d->shape == "linear")
            return std::max(std::abs(d->a + d->b * ws_), std::abs(d->a + d->b * we_));
        return std::abs(d->a) + std::abs(d->b);
    }
    if (const auto* st = std::get_if<StepSigma>(&spec_)) {
        double m = std::abs(start_value_);
        for (double l : st->levels) m = std::max(m, std::abs(l));
        return m;
    }
    const auto& ou = std::get<OuSigma>(spec_);
    // Between jumps the path moves monotonically toward the mean, so extrema sit
    // at breakpoints and at the window edges.
    double m = std::max({std::abs(start_value_), std::abs(ou.mean), std::abs(value(we_))});
    for (std::size_t i = 0; i < breaks_.size(); ++i)
        m = std::max({m, std::abs(post_[i]), std::abs(left_limit(breaks_[i]))});
    return m;
}

} // namespace lss

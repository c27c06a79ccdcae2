#include "lss/variation.hpp"

#include <algorithm>
#include <cmath>

#include "lss/errors.hpp"

namespace lss {

std::string to_string(RegimeTag tag) {
    switch (tag) {
        case RegimeTag::jumps: return "jumps";
        case RegimeTag::stable_scaling: return "stable_scaling";
        case RegimeTag::smooth: return "smooth";
        default: return "critical";
    }
}

std::vector<double> increments_k(const std::vector<double>& x, int k) {
    if (k < 1 || k > 12) throw ConfigInvalid("increments: k must be in [1, 12]");
    if (x.size() <= static_cast<std::size_t>(k)) throw TooShort("increments: need more than k samples");
    std::vector<double> binom(k + 1, 1.0);
    for (int j = 1; j <= k; ++j) binom[j] = binom[j - 1] * (k - j + 1) / j;
    std::vector<double> out(x.size() - k);
    for (std::size_t i = k; i < x.size(); ++i) {
        double d = 0.0;
        for (int j = 0; j <= k; ++j) {
            const double term = binom[j] * x[i - j];
            d += (j % 2) ? -term : term;
        }
        out[i - k] = d;
    }
    return out;
}

double VariationSeries::value_at(double t) const {
    if (values.empty()) throw TooShort("variation: empty series");
    auto idx = static_cast<long>(std::floor(static_cast<double>(n) * t + 1e-9));
    idx = std::clamp<long>(idx, 0, static_cast<long>(values.size()) - 1);
    return values[static_cast<std::size_t>(idx)];
}

VariationSeries power_variation(const LssPath& path, double p, int k) {
    if (!(p > 0.0)) throw ConfigInvalid("variation: p must be > 0");
    if (k < 1 || k > 12) throw ConfigInvalid("variation: k must be in [1, 12]");
    if (path.values.size() <= static_cast<std::size_t>(k))
        throw TooShort("variation: path has too few observations");
    VariationSeries series;
    series.n = path.n;
    series.k = k;
    series.p = p;
    series.values.assign(path.values.size(), 0.0);
    const std::vector<double> diffs = increments_k(path.values, k);
    double acc = 0.0;
    for (std::size_t i = k; i < path.values.size(); ++i) {
        acc += std::pow(std::abs(diffs[i - k]), p);
        series.values[i] = acc;
    }
    return series;
}

RegimeTag regime_classify(double alpha, double beta, double p, int k, double tol) {
    if (!(alpha > 0.0)) throw ConfigInvalid("regime: alpha must be > 0");
    if (!(beta >= 0.0 && beta < 2.0))
        throw ConfigInvalid("regime: activity index must be in [0, 2)");
    if (!(p > 0.0)) throw ConfigInvalid("regime: p must be > 0");
    if (k < 1 || k > 12) throw ConfigInvalid("regime: k must be in [1, 12]");

    const double jump_edge = k - 1.0 / p;
    if (std::abs(p - beta) <= tol) return RegimeTag::critical;
    if (std::abs(alpha - jump_edge) <= tol) return RegimeTag::critical;
    if (beta > tol) {
        const double scale_edge = k - 1.0 / beta;
        if (std::abs(alpha - scale_edge) <= tol) return RegimeTag::critical;
        if (p < beta && alpha < scale_edge) return RegimeTag::stable_scaling;
    }

    if (p >= 1.0 && p > beta && alpha < jump_edge) return RegimeTag::jumps;
    if (p >= 1.0 && alpha > k - 1.0 / std::max(beta, p)) return RegimeTag::smooth;
    return RegimeTag::critical; // no covered limit for this combination
}

double normalization_factor(RegimeTag regime, long n, double alpha, double beta, double p, int k) {
    if (n < 2) throw ConfigInvalid("normalization: n must be >= 2");
    const auto nd = static_cast<double>(n);
    switch (regime) {
        case RegimeTag::jumps: return std::pow(nd, alpha * p);
        case RegimeTag::stable_scaling: return std::pow(nd, p * (alpha + 1.0 / beta) - 1.0);
        case RegimeTag::smooth: return std::pow(nd, p * k - 1.0);
        default: break;
    }
    throw CriticalRegime("normalization: no scaling law at a regime boundary");
}

} // namespace lss

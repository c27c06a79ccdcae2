#include "lss/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lss/errors.hpp"

namespace lss {

std::vector<double> default_p_grid() {
    std::vector<double> g;
    for (int i = 1; i <= 12; ++i) g.push_back(0.25 * i);
    return g;
}

double scale_stat(const LssPath& path, double p) {
    if (!(p > 0.0)) throw ConfigInvalid("scale_stat: p must be > 0");
    if (path.t_max < 1.0) throw InsufficientWindow("scale_stat: path must reach t = 1");
    const VariationSeries v = power_variation(path, p, 1);
    const double total = v.value_at(1.0);
    if (!(total > 0.0)) throw ZeroVariation("scale_stat: variation vanished");
    return -std::log(total) / std::log(static_cast<double>(path.n));
}

double scale_limit(double alpha, double beta, double p) {
    if (!(beta > 0.0 && beta <= 2.0)) throw ConfigInvalid("scale_limit: beta must be in (0, 2]");
    if (!(p > 0.0)) throw ConfigInvalid("scale_limit: p must be > 0");
    if (p >= beta) return alpha * p;
    return p * (alpha + 1.0 / beta) - 1.0;
}

EstimateReport fit_alpha_beta(const LssPath& path, const std::vector<double>& p_grid) {
    if (p_grid.size() < 2) throw ConfigInvalid("fit: need at least two exponents");
    for (std::size_t i = 1; i < p_grid.size(); ++i)
        if (!(p_grid[i] > p_grid[i - 1]))
            throw ConfigInvalid("fit: exponent grid must be strictly increasing");

    EstimateReport rep;
    rep.p_points = p_grid;
    rep.observed.reserve(p_grid.size());
    for (double p : p_grid) rep.observed.push_back(scale_stat(path, p));

    std::vector<double> weight(p_grid.size());
    for (std::size_t j = 0; j < p_grid.size(); ++j) {
        if (j == 0)
            weight[j] = 0.5 * (p_grid[1] - p_grid[0]);
        else if (j + 1 == p_grid.size())
            weight[j] = 0.5 * (p_grid[j] - p_grid[j - 1]);
        else
            weight[j] = 0.5 * (p_grid[j + 1] - p_grid[j - 1]);
    }

    const double step = 0.01;
    double best_obj = std::numeric_limits<double>::infinity();
    double best_alpha = 0.0, best_beta = 1.0;
    for (int bi = 0; bi <= 100; ++bi) {
        const double beta = 1.0 + step * bi;
        const double alpha_max = 1.0 - 1.0 / beta;
        for (int ai = 0;; ++ai) {
            const double alpha = step * ai;
            if (alpha > alpha_max + 1e-12) break;
            double obj = 0.0;
            for (std::size_t j = 0; j < p_grid.size(); ++j) {
                const double r = rep.observed[j] - scale_limit(alpha, beta, p_grid[j]);
                obj += weight[j] * r * r;
            }
            // ties resolve toward smaller alpha, then smaller beta
            if (obj < best_obj - 1e-15 ||
                (std::abs(obj - best_obj) <= 1e-15 &&
                 (alpha < best_alpha || (alpha == best_alpha && beta < best_beta)))) {
                best_obj = obj;
                best_alpha = alpha;
                best_beta = beta;
            }
        }
    }
    rep.alpha_hat = best_alpha;
    rep.beta_hat = best_beta;
    rep.h_hat = best_alpha + 1.0 / best_beta;
    rep.objective = best_obj;
    rep.fitted.reserve(p_grid.size());
    for (double p : p_grid) rep.fitted.push_back(scale_limit(best_alpha, best_beta, p));
    return rep;
}

double ratio_stat(const LssPath& path, double p) {
    if (!(p > 0.0)) throw ConfigInvalid("ratio_stat: p must be > 0");
    if (path.values.size() < 3) throw TooShort("ratio_stat: need at least three observations");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 1; i < path.values.size(); ++i)
        den += std::pow(std::abs(path.values[i] - path.values[i - 1]), p);
    for (std::size_t i = 2; i < path.values.size(); ++i)
        num += std::pow(std::abs(path.values[i] - path.values[i - 2]), p);
    if (!(den > 0.0)) throw ZeroDenominator("ratio_stat: first-lag variation vanished");
    return num / den;
}

double estimate_H(const LssPath& path, double p) {
    const double r = ratio_stat(path, p);
    if (!(r > 0.0)) throw NonPositiveRatio("estimate_H: ratio must be positive");
    return std::log2(r) / p;
}

double relative_intermittency(const LssPath& path, double p, int k, double t) {
    if (!(t > 0.0 && t <= path.t_max))
        throw ConfigInvalid("relative_intermittency: t must lie in (0, t_max]");
    const VariationSeries v = power_variation(path, p, k);
    const double den = v.values.back();
    if (!(den > 0.0)) throw ZeroDenominator("relative_intermittency: total variation vanished");
    return v.value_at(t) / den;
}

} // namespace lss

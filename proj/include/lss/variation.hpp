#pragma once

#include <string>
#include <vector>

#include "lss/simulate.hpp"

namespace lss {

enum class RegimeTag { jumps, stable_scaling, smooth, critical };

std::string to_string(RegimeTag tag);

// k-th order forward differences: out[i] = sum_j (-1)^j C(k,j) x[i-j] for
// i = k .. x.size()-1 (out.size() == x.size() - k).
std::vector<double> increments_k(const std::vector<double>& x, int k);

struct VariationSeries {
    long n = 0;
    int k = 1;
    double p = 1.0;
    std::vector<double> values; // cumulative sum_{i=k}^{j} |diff_i|^p at t = j/n; zero for j < k

    // V at time t: values[floor(n t)] (clamped to the recorded range).
    double value_at(double t) const;
};

VariationSeries power_variation(const LssPath& path, double p, int k);

// Which limit applies for (alpha, beta, p, k). Boundary cases within tol of a
// regime border, and parameter combinations no limit covers, report critical.
RegimeTag regime_classify(double alpha, double beta, double p, int k, double tol = 1e-12);

// Premultiplier a_n with a_n * V(p;k) converging: n^(alpha p) for the jump
// regime, n^(p(alpha + 1/beta) - 1) for the stable-scaling regime,
// n^(p k - 1) for the smooth regime. Throws CriticalRegime for the boundary.
double normalization_factor(RegimeTag regime, long n, double alpha, double beta, double p, int k);

} // namespace lss

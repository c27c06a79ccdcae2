#pragma once

#include <vector>

#include "lss/simulate.hpp"
#include "lss/variation.hpp"

namespace lss {

// Default exponent grid for the scaling fit: 0.25, 0.50, ..., 3.00.
std::vector<double> default_p_grid();

// S(n, p) = -log V(p;1)_1 / log n computed from first-order variation at t = 1.
double scale_stat(const LssPath& path, double p);

// Model value of S(n, p) as n -> inf: alpha p for p >= beta, p(alpha + 1/beta) - 1
// for p < beta.
double scale_limit(double alpha, double beta, double p);

struct EstimateReport {
    double alpha_hat = 0.0;
    double beta_hat = 0.0;
    double h_hat = 0.0; // alpha_hat + 1/beta_hat
    double objective = 0.0;
    std::vector<double> p_points;
    std::vector<double> observed; // S(n, p_j)
    std::vector<double> fitted;   // scale_limit at the minimizer
};

// Grid least squares over beta in [1, 2], alpha in [0, 1 - 1/beta] (step 0.01),
// trapezoid-weighted in p; ties break toward smaller (alpha, beta).
EstimateReport fit_alpha_beta(const LssPath& path, const std::vector<double>& p_grid);

// R(n, p): ratio of second-lag to first-lag absolute power sums.
double ratio_stat(const LssPath& path, double p);

// H estimate log2 R / p from the lag ratio.
double estimate_H(const LssPath& path, double p);

// V(p;k) restricted to [0, t] relative to the full window.
double relative_intermittency(const LssPath& path, double p, int k, double t);

} // namespace lss

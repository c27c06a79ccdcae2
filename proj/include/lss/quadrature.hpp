#pragma once

#include <cmath>
#include <cstddef>
#include <functional>

#include "lss/errors.hpp"

namespace lss {

// Adaptive Simpson with the classical (S_left + S_right - S)/15 error estimate.
// tol is an absolute tolerance for the interval [a, b]; the recursion splits the
// budget in half per bisection, so the accumulated error stays below tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 48, std::size_t max_evals = 50'000'000);

// Integrates f over [a, b] after the substitution x = a + (b-a) z^power, z in [0, 1].
// power > 1 crushes an integrable singularity (value or derivative) at the left
// endpoint; the integrand is never evaluated at z = 0, the limit is taken as 0.
double adaptive_simpson_left_power(const std::function<double(double)>& f, double a, double b,
                                   double power, double tol, int max_depth = 48);

// Composite trapezoid over an explicit grid of samples.
double trapezoid(const double* grid, const double* values, std::size_t count);

} // namespace lss

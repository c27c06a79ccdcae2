#pragma once

#include <vector>

#include "lss/driver.hpp"
#include "lss/kernel.hpp"
#include "lss/sigma.hpp"

namespace lss {

struct MarkedJump {
    double time = 0.0;
    double size = 0.0;
    double sigma_left = 0.0;
    double mark = 0.0; // position of the jump inside its sampling cell, in [0, 1)
};

// Jumps with time in (t0, t1] annotated with the pre-jump volatility and the
// sampling-cell mark ceil(n t) - n t.
std::vector<MarkedJump> mark_jumps(const DriverPath& jumps, const SigmaPath& sigma, long n,
                                   double t0, double t1);

// sum_{l >= 0} |h_k(l + mark)|^p, with a certified tail bracket; throws
// DivergentSeries when (k - alpha) p <= 1 (unless the sum terminates exactly).
double vm_series(const HkParams& hk, double p, double mark, double tol = 1e-10);

// Jump-regime limit: |c0|^p sum_m |size_m sigma_m|^p vm(mark_m).
double jump_regime_limit(const KernelSpec& kernel, const std::vector<MarkedJump>& jumps, int k,
                         double p);

// E|Z|^p for Z standard symmetric stable with index beta (unit scale in the
// exponent exp(-|u|^beta)); quadrature of the inversion integral plus a tail
// series. Throws DivergentMoment when p >= beta.
double abs_moment_stable(double beta, double p);

// Stable-scaling regime constant: |c0|^p gamma^p (integral |h_k|^beta)^(p/beta) E|Z|^p.
double stable_scaling_constant(const KernelSpec& kernel, double beta, double gamma_scale, int k,
                               double p);

// integral |F_u|^p du from a sampled F path (trapezoid).
double f_power_integral(const std::vector<double>& u_grid, const std::vector<double>& f_values,
                        double p);

// Exact smooth-regime limit for a finite jump set: integral_{t0}^{t1} |F_u|^p du
// with F_u = sum_{s_j < u} g^(k)(u - s_j) sigma(s_j-) w_j. Integrates between
// jump times with singularity-absorbing substitutions and cross-checks two
// tolerances (NotConverged on disagreement).
double f_power_integral_cp(const KernelSpec& kernel, int k, const SigmaPath& sigma,
                           const DriverPath& jumps, double p, double t0, double t1);

} // namespace lss

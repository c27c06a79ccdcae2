#pragma once

#include <vector>

#include "lss/driver.hpp"

namespace lss {

enum class KernelFamily { gamma, power };
enum class G0Mode { zero, equal_g };

// Weight kernel pair (g, g0). Both vanish on (-inf, 0].
//   gamma family: g(t) = c0 * t^alpha * exp(-decay * t)
//   power family: g(t) = c0 * t^alpha            (forces g0 = g)
struct KernelSpec {
    KernelFamily family = KernelFamily::gamma;
    double c0 = 1.0;    // != 0
    double alpha = 0.5; // > 0
    double decay = 1.0; // gamma family only, >= 0
    G0Mode g0_mode = G0Mode::zero;
    double delta = 1.0; // > 0, split point for the tail conditions in check_assumption_a

    void validate() const; // throws ConfigInvalid
};

inline KernelSpec gamma_kernel(double c0, double alpha, double decay,
                               G0Mode mode = G0Mode::zero) {
    KernelSpec s;
    s.family = KernelFamily::gamma;
    s.c0 = c0;
    s.alpha = alpha;
    s.decay = decay;
    s.g0_mode = mode;
    return s;
}

inline KernelSpec power_kernel(double c0, double alpha) {
    KernelSpec s;
    s.family = KernelFamily::power;
    s.c0 = c0;
    s.alpha = alpha;
    s.decay = 0.0;
    s.g0_mode = G0Mode::equal_g;
    return s;
}

// Parameters of h_k(x) = sum_{j=0}^k (-1)^j C(k,j) (x-j)_+^alpha.
struct HkParams {
    double alpha; // > 0
    int k;        // >= 1
};

double eval_g(const KernelSpec& spec, double t);  // 0 for t <= 0
double eval_g0(const KernelSpec& spec, double t); // 0 for t <= 0 or g0_mode == zero

// k-th derivative of g on t > 0, closed form (falling-factorial expansion for the
// gamma family). k = 0 returns g(t).
double eval_g_deriv(const KernelSpec& spec, int k, double t);

// alpha * (alpha-1) * ... * (alpha-j+1); ff(alpha, 0) = 1.
double falling_factorial(double alpha, int j);

double eval_hk(const HkParams& hk, double x);

// k-th backward difference of g at i/n around shift s:
//   sum_{j=0}^k (-1)^j C(k,j) g((i-j)/n - s)
double weights_gin(const KernelSpec& spec, int k, long n, long i, double s);

// Result of an integral computed as quadrature plus a certified tail bracket.
// [tail_lower, tail_upper] brackets the true integral over [x_cut, inf); value
// carries the quadrature part plus the bracket midpoint, accurate to +- err.
struct TailBracketIntegral {
    double value = 0.0;
    double err = 0.0;
    double x_cut = 0.0;
    double tail_lower = 0.0;
    double tail_upper = 0.0;
};

// integral_0^inf |h_k(x)|^q dx to absolute accuracy ~1e-8. Integrable iff
// (alpha - k) q < -1, except that integer alpha < k makes h_k compactly supported.
// Throws NonIntegrableTail otherwise.
TailBracketIntegral hk_abs_power_integral_detail(const HkParams& hk, double q);
double hk_abs_power_integral(const HkParams& hk, double q);

// Numeric audit of the standing kernel assumptions for a k-th order analysis with
// tail exponent theta: small-time regular variation g(t) ~ c0 t^alpha, the
// derivative envelope |g^(k)(t)| <= C t^(alpha-k) on (0, delta), L^theta tails and
// monotone decay of |g'| and |g^(k)| on (delta, inf).
struct AssumptionReport {
    bool small_time_ok = false;
    double small_time_ratio = 0.0; // g(t)/(c0 t^alpha) at the smallest probe
    bool deriv_envelope_ok = false;
    double fitted_c = 0.0; // sup |g^(k)(t)| / t^(alpha-k) over (0, delta)
    bool gprime_tail_integrable = false;
    double gprime_tail_value = 0.0; // integral_delta^inf |g'|^theta
    bool gk_tail_integrable = false;
    double gk_tail_value = 0.0; // integral_delta^inf |g^(k)|^theta
    bool gprime_monotone = false;
    bool gk_monotone = false;

    bool all_ok() const {
        return small_time_ok && deriv_envelope_ok && gprime_tail_integrable &&
               gk_tail_integrable && gprime_monotone && gk_monotone;
    }
};

AssumptionReport check_assumption_a(const KernelSpec& spec, int k, double theta);

// A real function sampled on a grid; integrated in s by the trapezoid rule.
struct SampledFunction {
    std::vector<double> grid;
    std::vector<double> values;
};

// phi_q(x) = |x|^q 1{|x|>1} + x^2 1{|x|<=1} integrated against ds x nu(du), where nu
// is the Levy measure of the driver. Throws DivergentIntegral when the u-integral
// diverges (q >= beta for the stable family, q >= tail index for Pareto jumps).
// Requires q == 0 or q >= 1.
double phi_functional(double q, const DriverSpec& levy, const SampledFunction& f);

} // namespace lss

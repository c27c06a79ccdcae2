#include "lss/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <tuple>

#include "lss/errors.hpp"
#include "lss/oracle_cache.hpp"
#include "lss/quadrature.hpp"

namespace lss {

namespace {

constexpr double kPi = std::numbers::pi;

double ipow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

double binom_int(int k, int j) {
    double r = 1.0;
    for (int i = 1; i <= j; ++i) r = r * (k - j + i) / i;
    return r;
}

// Evaluates h_k. Direct summation of (x-j)_+^alpha loses all precision once x^alpha
// dwarfs the k-th difference (~ x^(alpha-k)), so beyond x_series the expansion
//   h_k(x) = sum_{m>=k} (-1)^m binom(alpha,m) S(m,k) x^(alpha-m),
//   S(m,k) = sum_j (-1)^j C(k,j) j^m,
// is used; its term ratio decays like k/x, so x >= k+19 converges fast.
class HkEvaluator {
  public:
    HkEvaluator(double alpha, int k) : alpha_(alpha), k_(k), x_series_(k + 19.0) {
        if (!(alpha > 0.0)) throw ConfigInvalid("h_k: alpha must be > 0");
        if (k < 1 || k > 12) throw ConfigInvalid("h_k: k must be in [1, 12]");
        binom_k_.resize(k + 1);
        for (int j = 0; j <= k; ++j) binom_k_[j] = binom_int(k, j);

        double bin_alpha = 1.0; // binom(alpha, m), updated incrementally
        for (int m = 0; m < k; ++m) bin_alpha *= (alpha - m) / (m + 1);
        for (int m = k; m <= k + kSeriesTerms; ++m) {
            double s = 0.0;
            for (int j = 1; j <= k; ++j)
                s += ((j % 2) ? -1.0 : 1.0) * binom_k_[j] * std::pow(static_cast<double>(j), m);
            series_.push_back(((m % 2) ? -1.0 : 1.0) * bin_alpha * s);
            bin_alpha *= (alpha - m) / (m + 1);
        }
    }

    double alpha() const { return alpha_; }
    int k() const { return k_; }
    double series_threshold() const { return x_series_; }

    double operator()(double x) const {
        if (x <= 0.0) return 0.0;
        if (x >= x_series_) return large_x(x);
        double sum = 0.0;
        for (int j = 0; j <= k_ && j < x; ++j) {
            const double term = binom_k_[j] * std::pow(x - j, alpha_);
            sum += (j % 2) ? -term : term;
        }
        return sum;
    }

  private:
    static constexpr int kSeriesTerms = 72;

    double large_x(double x) const {
        const double t = 1.0 / x;
        double tp = 1.0;
        double sum = 0.0;
        for (double c : series_) {
            const double term = c * tp;
            sum += term;
            if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
            tp *= t;
        }
        return sum * std::pow(x, alpha_ - k_);
    }

    double alpha_;
    int k_;
    double x_series_;
    std::vector<double> binom_k_;
    std::vector<double> series_; // coefficient of x^(alpha-k-i)
};

const HkEvaluator& cached_hk(double alpha, int k) {
    thread_local double c_alpha = -1.0;
    thread_local int c_k = -1;
    thread_local HkEvaluator* cached = nullptr;
    if (!cached || c_alpha != alpha || c_k != k) {
        delete cached;
        cached = new HkEvaluator(alpha, k);
        c_alpha = alpha;
        c_k = k;
    }
    return *cached;
}

// Integrates |h|^q over [a, b] where h is sign-definite except for isolated zeros:
// scans for sign changes, splits there, and crushes endpoint power singularities
// with the z^mu substitution on both sides of every chunk.
double integrate_abs_power(const HkEvaluator& h, double a, double b, double q, double mu_left,
                           double mu_right, double tol) {
    if (!(b > a)) return 0.0;
    std::vector<double> cuts{a};
    const int kScan = 64;
    double prev_x = a;
    double prev_v = h(a + 1e-13 * (b - a));
    for (int i = 1; i <= kScan; ++i) {
        const double x = a + (b - a) * i / kScan;
        const double v = h(i == kScan ? x - 1e-13 * (b - a) : x);
        if (v == 0.0 || (v > 0.0) != (prev_v > 0.0)) {
            double lo = prev_x, hi = x, flo = prev_v;
            for (int it = 0; it < 80 && hi - lo > 1e-15 * (1.0 + std::abs(hi)); ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = h(mid);
                if (fm == 0.0) { lo = hi = mid; break; }
                if ((fm > 0.0) == (flo > 0.0)) { lo = mid; flo = fm; } else { hi = mid; }
            }
            const double z = 0.5 * (lo + hi);
            if (z > cuts.back() && z < b) cuts.push_back(z);
        }
        prev_x = x;
        prev_v = (v == 0.0) ? prev_v : v;
    }
    cuts.push_back(b);

    auto f = [&](double x) { return std::pow(std::abs(h(x)), q); };
    const double zero_mu = std::max(1.0, 3.0 / (q + 1.0));
    double total = 0.0;
    const double piece_tol = tol / static_cast<double>(cuts.size() - 1);
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const double u = cuts[c], v = cuts[c + 1];
        const double mu_l = (c == 0) ? mu_left : zero_mu;
        const double mu_r = (c + 2 == cuts.size()) ? mu_right : zero_mu;
        const double mid = 0.5 * (u + v);
        total += adaptive_simpson_left_power(f, u, mid, mu_l, 0.5 * piece_tol);
        auto mirrored = [&](double y) { return f(v - y); };
        total += adaptive_simpson_left_power(mirrored, 0.0, v - mid, mu_r, 0.5 * piece_tol);
    }
    return total;
}

} // namespace

void KernelSpec::validate() const {
    if (c0 == 0.0) throw ConfigInvalid("kernel: c0 must be nonzero");
    if (!(alpha > 0.0)) throw ConfigInvalid("kernel: alpha must be > 0");
    if (!(delta > 0.0)) throw ConfigInvalid("kernel: delta must be > 0");
    if (family == KernelFamily::gamma) {
        if (!(decay >= 0.0)) throw ConfigInvalid("kernel: decay must be >= 0");
    } else {
        if (g0_mode != G0Mode::equal_g)
            throw ConfigInvalid("kernel: the pure power family requires g0_mode=equal_g");
    }
}

double falling_factorial(double alpha, int j) {
    double r = 1.0;
    for (int i = 0; i < j; ++i) r *= (alpha - i);
    return r;
}

double eval_g(const KernelSpec& spec, double t) {
    if (t <= 0.0) return 0.0;
    const double p = spec.c0 * std::pow(t, spec.alpha);
    if (spec.family == KernelFamily::gamma && spec.decay != 0.0) return p * std::exp(-spec.decay * t);
    return p;
}

double eval_g0(const KernelSpec& spec, double t) {
    if (spec.g0_mode == G0Mode::zero) return 0.0;
    return eval_g(spec, t);
}

double eval_g_deriv(const KernelSpec& spec, int k, double t) {
    if (k < 0) throw ConfigInvalid("eval_g_deriv: k must be >= 0");
    if (t <= 0.0) return 0.0;
    if (k == 0) return eval_g(spec, t);
    const double lambda = (spec.family == KernelFamily::gamma) ? spec.decay : 0.0;
    // d^k/dt^k [t^alpha e^(-lambda t)] by the product rule:
    //   e^(-lambda t) sum_j C(k,j) (-lambda)^(k-j) ff(alpha, j) t^(alpha-j)
    double sum = 0.0;
    for (int j = 0; j <= k; ++j)
        sum += binom_int(k, j) * ipow(-lambda, k - j) * falling_factorial(spec.alpha, j) *
               std::pow(t, spec.alpha - j);
    return spec.c0 * ((lambda != 0.0) ? std::exp(-lambda * t) * sum : sum);
}

double eval_hk(const HkParams& hk, double x) { return cached_hk(hk.alpha, hk.k)(x); }

double weights_gin(const KernelSpec& spec, int k, long n, long i, double s) {
    if (k < 0 || k > 12) throw ConfigInvalid("weights_gin: k must be in [0, 12]");
    if (n < 1) throw ConfigInvalid("weights_gin: n must be >= 1");
    double sum = 0.0;
    for (int j = 0; j <= k; ++j) {
        const double term = binom_int(k, j) * eval_g(spec, static_cast<double>(i - j) / n - s);
        sum += (j % 2) ? -term : term;
    }
    return sum;
}

TailBracketIntegral hk_abs_power_integral_detail(const HkParams& hk, double q) {
    if (!(q > 0.0)) throw ConfigInvalid("hk_abs_power_integral: q must be > 0");
    const HkEvaluator& h = cached_hk(hk.alpha, hk.k);
    const double alpha = hk.alpha;
    const int k = hk.k;
    const double ff = falling_factorial(alpha, k);
    const bool compact = (ff == 0.0); // integer alpha < k: h_k vanishes on [k, inf)
    if (!compact && (alpha - k) * q >= -1.0)
        throw NonIntegrableTail("hk_abs_power_integral: (alpha-k)q >= -1, tail not integrable");

    TailBracketIntegral out;
    double err = 0.0;

    // h_k(x) = x^alpha on [0, 1]: this piece is exact.
    out.value = 1.0 / (alpha * q + 1.0);

    const double piece_tol = 1e-11;
    const double mu_kink = std::min(80.0, std::max(1.0, 3.0 / alpha));
    const int last_unit = compact ? (k - 1) : k;
    for (int j = 1; j <= last_unit; ++j) {
        out.value += integrate_abs_power(h, j, j + 1.0, q, mu_kink, mu_kink, piece_tol);
        err += piece_tol;
    }
    if (compact) {
        out.x_cut = k;
        out.err = err;
        return out;
    }

    const double x_cut = k + 20.0;
    out.x_cut = x_cut;
    out.value += integrate_abs_power(h, k + 1.0, x_cut, q, mu_kink, 1.0, piece_tol);
    err += piece_tol;

    // Certified envelope: h_k(x) = ff(alpha,k) xi^(alpha-k) with xi in (x-k, x), so
    // |ff| x^(alpha-k) <= |h_k(x)| <= |ff| (x-k)^(alpha-k) for x > k.
    const double E = (alpha - k) * q; // < -1
    const double cq = std::pow(std::abs(ff), q);
    auto env_tail = [&](double X, double shift) {
        return cq * std::pow(X - shift, E + 1.0) / (-E - 1.0);
    };
    out.tail_lower = env_tail(x_cut, 0.0);
    out.tail_upper = env_tail(x_cut, k);

    // Quadrature in y = log x out to where the envelope bracket is negligible, then
    // add the bracket midpoint for the rest.
    auto bracket_width = [&](double X) { return env_tail(X, k) - env_tail(X, 0.0); };
    double x1 = 2.0 * x_cut;
    while (bracket_width(x1) > 5e-10 && x1 < 1e290) x1 *= 2.0;
    auto fy = [&](double y) {
        const double x = std::exp(y);
        return std::pow(std::abs(h(x)), q) * x;
    };
    const double quad_tol = 2e-9;
    double tail = adaptive_simpson(fy, std::log(x_cut), std::log(x1), quad_tol);
    tail += 0.5 * (env_tail(x1, 0.0) + env_tail(x1, k));
    err += quad_tol + 0.5 * bracket_width(x1);

    out.value += tail;
    out.err = err;
    return out;
}

double hk_abs_power_integral(const HkParams& hk, double q) {
    static OracleCache<std::tuple<double, int, double>> cache;
    return cache.get_or_compute(std::tuple{hk.alpha, hk.k, q},
                                [&] { return hk_abs_power_integral_detail(hk, q).value; });
}

namespace {

// integral_delta^inf |g^(j)|^theta, with convergence detection.
std::pair<bool, double> tail_power_integral(const KernelSpec& spec, int j, double theta) {
    const double lambda = (spec.family == KernelFamily::gamma) ? spec.decay : 0.0;
    auto f = [&](double t) { return std::pow(std::abs(eval_g_deriv(spec, j, t)), theta); };
    if (lambda == 0.0) {
        const double expo = (spec.alpha - j) * theta;
        if (expo >= -1.0) return {false, std::numeric_limits<double>::infinity()};
        const double c = std::pow(std::abs(spec.c0 * falling_factorial(spec.alpha, j)), theta);
        return {true, c * std::pow(spec.delta, expo + 1.0) / (-expo - 1.0)};
    }
    // Exponential decay: integrate on doubling windows until the increment dies.
    double total = 0.0;
    double a = spec.delta;
    double width = std::max(1.0, 8.0 / lambda);
    for (int it = 0; it < 60; ++it) {
        const double inc = adaptive_simpson(f, a, a + width, 1e-12 * (1.0 + total));
        total += inc;
        a += width;
        width *= 2.0;
        if (inc <= 1e-13 * (1.0 + total) && it >= 2) return {true, total};
    }
    return {false, total};
}

bool sampled_nonincreasing(const KernelSpec& spec, int j, double from, double to) {
    const int pts = 800;
    double prev = std::abs(eval_g_deriv(spec, j, from));
    const double ratio = std::pow(to / from, 1.0 / pts);
    double t = from;
    for (int i = 1; i <= pts; ++i) {
        t *= ratio;
        const double v = std::abs(eval_g_deriv(spec, j, t));
        if (v > prev * (1.0 + 1e-12) + 1e-300) return false;
        prev = v;
    }
    return true;
}

} // namespace

AssumptionReport check_assumption_a(const KernelSpec& spec, int k, double theta) {
    spec.validate();
    if (k < 1 || k > 12) throw ConfigInvalid("check_assumption_a: k must be in [1, 12]");
    if (!(theta > 0.0 && theta <= 2.0))
        throw ConfigInvalid("check_assumption_a: theta must be in (0, 2]");

    AssumptionReport rep;

    double first_dev = 0.0, last_dev = 0.0;
    for (int j = 0; j <= 12; ++j) {
        const double t = std::pow(10.0, -2.0 - 0.5 * j);
        const double r = eval_g(spec, t) / (spec.c0 * std::pow(t, spec.alpha));
        if (j == 0) first_dev = std::abs(r - 1.0);
        if (j == 12) {
            rep.small_time_ratio = r;
            last_dev = std::abs(r - 1.0);
        }
    }
    rep.small_time_ok = last_dev <= 1e-3 && last_dev <= first_dev + 1e-12;

    auto envelope_ratio = [&](double t) {
        return std::abs(eval_g_deriv(spec, k, t)) / std::pow(t, spec.alpha - k);
    };
    double c_fit = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double t = std::pow(10.0, -8.0 + i * (std::log10(spec.delta) + 8.0) / 200.0);
        if (t > spec.delta) break;
        c_fit = std::max(c_fit, envelope_ratio(t));
    }
    rep.fitted_c = c_fit;
    const double r8 = envelope_ratio(1e-8), r7 = envelope_ratio(1e-7);
    rep.deriv_envelope_ok = std::isfinite(c_fit) && (r7 == 0.0 || std::abs(r8 / r7 - 1.0) <= 0.02);

    auto [p_ok, p_val] = tail_power_integral(spec, 1, theta);
    rep.gprime_tail_integrable = p_ok;
    rep.gprime_tail_value = p_val;
    auto [k_ok, k_val] = tail_power_integral(spec, k, theta);
    rep.gk_tail_integrable = k_ok;
    rep.gk_tail_value = k_val;

    const double lambda = (spec.family == KernelFamily::gamma) ? spec.decay : 0.0;
    const double span_end =
        (lambda > 0.0) ? spec.delta + 100.0 / lambda : std::max(100.0 * spec.delta, spec.delta + 100.0);
    rep.gprime_monotone = sampled_nonincreasing(spec, 1, spec.delta, span_end);
    rep.gk_monotone = sampled_nonincreasing(spec, k, spec.delta, span_end);
    return rep;
}

namespace {

double phi_q(double q, double x) {
    const double ax = std::abs(x);
    if (ax <= 1.0) return x * x;
    return (q == 0.0) ? 1.0 : std::pow(ax, q);
}

// integral_0^inf phi_q(a u) u^(-1-rho) du restricted to u >= u_min, via u = e^v.
// Integrand in v: phi_q(a e^v) e^(-rho v); decays like e^((2-rho)v) to the left of
// the kink at v* = -log a and like e^((q-rho)v) to the right, so q < rho is required.
double phi_power_law_integral(double q, double rho, double a, double u_min) {
    if (a == 0.0) return 0.0;
    if (q >= rho)
        throw DivergentIntegral("phi_functional: |x|^q does not integrate against the Levy tail");
    auto fv = [&](double v) { return phi_q(q, a * std::exp(v)) * std::exp(-rho * v); };
    const double vstar = -std::log(a);
    const double log_eps = std::log(1e-15);
    const double v_hi = vstar + log_eps / (q - rho);
    const double lo = (u_min > 0.0) ? std::log(u_min) : vstar + log_eps / (2.0 - rho);
    if (lo >= v_hi) return 0.0;
    const double scale = std::pow(a, rho);
    double total = 0.0;
    if (lo < vstar) total += adaptive_simpson(fv, lo, std::min(vstar, v_hi), 1e-9 * scale);
    if (v_hi > vstar && vstar > lo)
        total += adaptive_simpson(fv, vstar, v_hi, 1e-9 * scale);
    else if (lo >= vstar)
        total += adaptive_simpson(fv, lo, v_hi, 1e-9 * scale);
    return total;
}

} // namespace

double phi_functional(double q, const DriverSpec& levy, const SampledFunction& f) {
    if (!(q == 0.0 || q >= 1.0)) throw ConfigInvalid("phi_functional: q must be 0 or >= 1");
    if (f.grid.size() != f.values.size() || f.grid.size() < 2)
        throw ConfigInvalid("phi_functional: need a sampled function with >= 2 points");
    for (std::size_t i = 1; i < f.grid.size(); ++i)
        if (!(f.grid[i] > f.grid[i - 1]))
            throw ConfigInvalid("phi_functional: grid must be strictly increasing");
    validate(levy);

    auto inner = [&](double a) -> double {
        a = std::abs(a);
        if (a == 0.0) return 0.0;
        if (const auto* st = std::get_if<StableDriver>(&levy)) {
            // Levy density c |u|^(-1-beta) with c chosen so that
            // integral (1 - cos(ux)) nu(dx) = gamma^beta |u|^beta.
            const double beta = st->beta;
            const double k_beta = kPi / (std::tgamma(1.0 + beta) * std::sin(kPi * beta / 2.0));
            const double c = std::pow(st->gamma_scale, beta) / k_beta;
            return 2.0 * c * phi_power_law_integral(q, beta, a, 0.0);
        }
        const auto& cp = std::get<CompoundPoissonDriver>(levy);
        if (const auto* r = std::get_if<RademacherLaw>(&cp.law))
            return cp.rate * phi_q(q, a * r->size);
        if (const auto* at = std::get_if<AtomsLaw>(&cp.law)) {
            double s = 0.0;
            for (const auto& [size, prob] : at->atoms) s += prob * phi_q(q, a * size);
            return cp.rate * s;
        }
        const auto& par = std::get<TwoSidedParetoLaw>(cp.law);
        const double dens_c = cp.rate * par.tail_index * std::pow(par.min_size, par.tail_index);
        return dens_c * phi_power_law_integral(q, par.tail_index, a, par.min_size);
    };

    double total = 0.0;
    const std::size_t m = f.grid.size();
    for (std::size_t i = 0; i < m; ++i) {
        double w;
        if (i == 0)
            w = 0.5 * (f.grid[1] - f.grid[0]);
        else if (i + 1 == m)
            w = 0.5 * (f.grid[m - 1] - f.grid[m - 2]);
        else
            w = 0.5 * (f.grid[i + 1] - f.grid[i - 1]);
        total += w * inner(f.values[i]);
    }
    return total;
}

} // namespace lss

#include "lss/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "lss/describe.hpp"
#include "lss/errors.hpp"

namespace lss {

void SimConfig::validate() const {
    if (n < 2) throw ConfigInvalid("sim: n must be >= 2");
    if (!(t_max > 0.0)) throw ConfigInvalid("sim: t_max must be > 0");
    if (burn_in < 0.0) throw ConfigInvalid("sim: burn_in must be >= 0");
    if (fine_factor < 1) throw ConfigInvalid("sim: fine_factor must be >= 1");
    if (!(tail_tol > 0.0)) throw ConfigInvalid("sim: tail_tol must be > 0");
}

double burnin_truncation(const KernelSpec& kernel, double q, double tail_tol) {
    kernel.validate();
    if (!(q > 0.0)) throw ConfigInvalid("burnin: q must be > 0");
    if (!(tail_tol > 0.0)) throw ConfigInvalid("burnin: tail_tol must be > 0");
    const double lambda = (kernel.family == KernelFamily::gamma) ? kernel.decay : 0.0;
    const double c0 = std::abs(kernel.c0);
    const double alpha = kernel.alpha;

    if (lambda > 0.0) {
        // integral_T^inf t^(aq) e^(-lq t) dt <= T^(aq) e^(-lq T) / (lq - aq/T)
        // once lq T >= 2 aq; the differenced form at most doubles each term.
        const double aq = alpha * q, lq = lambda * q;
        const double factor = (kernel.g0_mode == G0Mode::equal_g) ? std::pow(2.0, q + 1.0) : 1.0;
        for (double t = 2.0;; t += 1.0) {
            if (lq * t < 2.0 * aq) continue;
            const double tail =
                factor * std::pow(c0, q) * std::pow(t, aq) * std::exp(-lq * t) / (lq - aq / t);
            if (tail <= tail_tol) return t;
            if (t > 1e7) throw NotConverged("burnin: no horizon satisfied the tolerance");
        }
    }

    // No decay: only the differenced kernel has an integrable far tail, and only
    // for alpha < 1 with (alpha - 1) q < -1.
    if (kernel.g0_mode != G0Mode::equal_g)
        throw NonIntegrableTail("burnin: undecayed kernel without differencing has infinite memory");
    if (!(alpha < 1.0) || (alpha - 1.0) * q >= -1.0)
        throw NonIntegrableTail("burnin: differenced power tail (alpha-1)q >= -1 is not integrable");
    const double e = (1.0 - alpha) * q - 1.0; // > 0
    const double c = std::pow(c0 * alpha, q); // |g(t+u)-g(u)| <= alpha c0 u^(alpha-1) t for t<=1
    const double t_star = std::pow(c / (tail_tol * e), 1.0 / e);
    return std::max(2.0, std::ceil(t_star));
}

double lss_value_cp(const KernelSpec& kernel, const SigmaPath& sigma, const DriverPath& jumps,
                    double t) {
    if (!jumps.has_jumps) throw MissingJumpList("exact evaluation needs an explicit jump list");
    double sum = 0.0;
    for (const auto& j : jumps.jumps) {
        const double w = eval_g(kernel, t - j.time) - eval_g0(kernel, -j.time);
        if (w != 0.0) sum += w * sigma.left_limit(j.time) * j.size;
    }
    return sum;
}

LssPath simulate_lss_cp(const KernelSpec& kernel, const SigmaPath& sigma, const DriverPath& jumps,
                        const SimConfig& cfg) {
    kernel.validate();
    cfg.validate();
    LssPath path;
    path.n = cfg.n;
    path.t_max = cfg.t_max;
    const auto count = static_cast<std::size_t>(std::floor(cfg.n * cfg.t_max + 1e-9)) + 1;
    path.values.resize(count);
    for (std::size_t i = 0; i < count; ++i)
        path.values[i] = lss_value_cp(kernel, sigma, jumps, static_cast<double>(i) / cfg.n);
    path.provenance.kernel = describe(kernel);
    path.provenance.sigma = "path";
    path.provenance.driver = "compound_poisson(explicit jumps)";
    path.provenance.burn_in = -jumps.window_start;
    path.provenance.fine_factor = 1;
    path.provenance.n = cfg.n;
    return path;
}

double f_path_value_cp(const KernelSpec& kernel, int k, const SigmaPath& sigma,
                       const DriverPath& jumps, double u) {
    if (!jumps.has_jumps) throw MissingJumpList("exact evaluation needs an explicit jump list");
    double sum = 0.0;
    for (const auto& j : jumps.jumps) {
        if (j.time >= u) break;
        sum += eval_g_deriv(kernel, k, u - j.time) * sigma.left_limit(j.time) * j.size;
    }
    return sum;
}

StableLssEngine::StableLssEngine(const KernelSpec& kernel, const StableDriver& driver,
                                 const SimConfig& cfg)
    : kernel_(kernel), driver_(driver), cfg_(cfg) {
    kernel.validate();
    validate(DriverSpec{driver});
    cfg.validate();
    burn_in_ = (cfg.burn_in > 0.0) ? std::ceil(cfg.burn_in)
                                   : burnin_truncation(kernel, driver.beta, cfg.tail_tol);
    cell_step_ = 1.0 / (static_cast<double>(cfg.n) * cfg.fine_factor);
    n_obs_ = static_cast<long>(std::floor(cfg.n * cfg.t_max + 1e-9));
    b_cells_ = static_cast<std::size_t>(std::llround(burn_in_ * cfg.n)) *
               static_cast<std::size_t>(cfg.fine_factor);
    n_cells_ = b_cells_ + static_cast<std::size_t>(n_obs_) * cfg.fine_factor;

    // K[m] = g(m h); K[0] = 0 keeps the moving average adapted (cells strictly
    // before the evaluation point).
    std::vector<double> table(n_cells_ + 1, 0.0);
    for (std::size_t m = 1; m < table.size(); ++m)
        table[m] = eval_g(kernel_, static_cast<double>(m) * cell_step_);
    conv_ = std::make_unique<RealConvolver>(table, n_cells_ + 1);
}

StableLssEngine::~StableLssEngine() = default;

void StableLssEngine::prepare_f(int k) {
    if (k < 1 || k > 12) throw ConfigInvalid("prepare_f: k must be in [1, 12]");
    std::vector<double> table(n_cells_ + 1, 0.0);
    for (std::size_t m = 1; m < table.size(); ++m)
        table[m] = eval_g_deriv(kernel_, k, static_cast<double>(m) * cell_step_);
    conv_f_ = std::make_unique<RealConvolver>(table, n_cells_ + 1);
    f_order_ = k;
}

std::vector<double> StableLssEngine::draw_weights(Rng& rng, const SigmaPath& sigma) const {
    const double cell_scale = driver_.gamma_scale * std::pow(cell_step_, 1.0 / driver_.beta);
    std::vector<double> w(n_cells_ + 1, 0.0);
    for (std::size_t c = 0; c < n_cells_; ++c) {
        const double s_left = -burn_in_ + static_cast<double>(c) * cell_step_;
        w[c] = sigma.left_limit(s_left) * rng.stable(driver_.beta, cell_scale);
    }
    return w;
}

namespace {

LssPath assemble_path(const std::vector<double>& conv, std::size_t b_cells, int fine_factor,
                      long n_obs, const KernelSpec& kernel, long n, double t_max) {
    LssPath path;
    path.n = n;
    path.t_max = t_max;
    path.values.resize(static_cast<std::size_t>(n_obs) + 1);
    const double g0_level = (kernel.g0_mode == G0Mode::equal_g) ? conv[b_cells] : 0.0;
    for (long i = 0; i <= n_obs; ++i)
        path.values[static_cast<std::size_t>(i)] =
            conv[b_cells + static_cast<std::size_t>(i) * fine_factor] - g0_level;
    return path;
}

} // namespace

LssPath StableLssEngine::simulate(Rng& rng, const SigmaPath& sigma) const {
    if (sigma.window_start() > -burn_in_ + 1e-12 || sigma.window_end() < cfg_.t_max - 1e-12)
        throw ConfigInvalid("simulate: sigma path window does not cover the simulation window");
    const std::vector<double> w = draw_weights(rng, sigma);
    const std::vector<double> conv = conv_->convolve(w);
    LssPath path = assemble_path(conv, b_cells_, cfg_.fine_factor, n_obs_, kernel_, cfg_.n, cfg_.t_max);
    path.provenance.kernel = describe(kernel_);
    path.provenance.driver = describe(DriverSpec{driver_});
    path.provenance.sigma = "path";
    path.provenance.burn_in = burn_in_;
    path.provenance.fine_factor = cfg_.fine_factor;
    path.provenance.n = cfg_.n;
    return path;
}

LssPath StableLssEngine::simulate_with_f(Rng& rng, const SigmaPath& sigma,
                                         std::vector<double>& f_out) const {
    if (!conv_f_) throw ConfigInvalid("simulate_with_f: prepare_f was not called");
    const std::vector<double> w = draw_weights(rng, sigma);
    const std::vector<double> conv = conv_->convolve(w);
    LssPath path = assemble_path(conv, b_cells_, cfg_.fine_factor, n_obs_, kernel_, cfg_.n, cfg_.t_max);
    path.provenance.kernel = describe(kernel_);
    path.provenance.driver = describe(DriverSpec{driver_});
    path.provenance.sigma = "path";
    path.provenance.burn_in = burn_in_;
    path.provenance.fine_factor = cfg_.fine_factor;
    path.provenance.n = cfg_.n;

    const std::vector<double> conv_f = conv_f_->convolve(w);
    f_out.resize(static_cast<std::size_t>(n_obs_) + 1);
    for (long i = 0; i <= n_obs_; ++i)
        f_out[static_cast<std::size_t>(i)] =
            conv_f[b_cells_ + static_cast<std::size_t>(i) * cfg_.fine_factor];
    return path;
}

} // namespace lss

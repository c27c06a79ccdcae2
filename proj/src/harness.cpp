#include "lss/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <thread>

#include "lss/errors.hpp"
#include "lss/estimate.hpp"
#include "lss/limits.hpp"
#include "lss/variation.hpp"

namespace lss {

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    int t = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (t < 1) t = 1;
    t = std::min<int>(t, 16);
    if (t == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex err_mutex;
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (int i = 0; i < t; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double quantile(std::vector<double>& sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto i = static_cast<std::size_t>(pos);
    if (i + 1 >= sorted.size()) return sorted.back();
    const double frac = pos - static_cast<double>(i);
    return sorted[i] + (sorted[i + 1] - sorted[i]) * frac;
}

// NaN entries mark excluded replications.
McRow summarize(long n, const std::string& stat, const std::vector<double>& values,
                double target) {
    std::vector<double> kept;
    kept.reserve(values.size());
    double mean = 0.0;
    for (double v : values)
        if (!std::isnan(v)) {
            kept.push_back(v);
            mean += v;
        }
    McRow row;
    row.n = n;
    row.statistic = stat;
    row.target = target;
    row.count = kept.size();
    if (kept.empty()) {
        row.mean = row.median = row.q05 = row.q95 = kNaN;
        return row;
    }
    std::sort(kept.begin(), kept.end());
    row.mean = mean / static_cast<double>(kept.size());
    row.median = quantile(kept, 0.5);
    row.q05 = quantile(kept, 0.05);
    row.q95 = quantile(kept, 0.95);
    return row;
}

double resolve_burnin(const McConfig& cfg, double q) {
    return cfg.sim.burn_in > 0.0 ? std::ceil(cfg.sim.burn_in)
                                 : burnin_truncation(cfg.kernel, q, cfg.sim.tail_tol);
}

SimConfig sim_for_n(const SimConfig& base, long n, double burn_in) {
    SimConfig s = base;
    s.n = n;
    s.burn_in = burn_in;
    return s;
}

} // namespace

McReport run_verify_jump_regime(const McConfig& cfg) {
    const auto* cp = std::get_if<CompoundPoissonDriver>(&cfg.driver);
    if (!cp) throw ConfigInvalid("jump-regime verify needs a compound Poisson driver");
    if (cfg.n_list.empty()) throw ConfigInvalid("verify: n_list is empty");
    const double beta_eff = blumenthal_getoor(cfg.driver);
    if (regime_classify(cfg.kernel.alpha, beta_eff, cfg.p, cfg.k) != RegimeTag::jumps)
        throw ConfigInvalid("verify: configuration is outside the jump regime");

    const double burn_in = resolve_burnin(cfg, std::max(cfg.p, 1.0));
    const std::size_t reps = cfg.replications;
    const std::size_t n_count = cfg.n_list.size();
    std::vector<std::vector<double>> rel_err(n_count, std::vector<double>(reps, kNaN));
    std::atomic<std::size_t> degenerate{0};

    parallel_for(reps, cfg.threads, [&](std::size_t r) {
        Rng driver_rng(derive_seed(cfg.seed, r, Stream::driver));
        Rng sigma_rng(derive_seed(cfg.seed, r, Stream::sigma));
        const DriverPath jumps =
            simulate_compound_poisson(driver_rng, *cp, -burn_in, cfg.sim.t_max);
        const SigmaPath sigma = simulate_sigma(sigma_rng, cfg.sigma, -burn_in, cfg.sim.t_max);

        bool any = false;
        for (const auto& j : jumps.jumps) any = any || (j.time > 0.0 && j.time <= cfg.sim.t_max);
        if (!any) {
            degenerate.fetch_add(1);
            return;
        }
        for (std::size_t jn = 0; jn < n_count; ++jn) {
            const long n = cfg.n_list[jn];
            const auto marked = mark_jumps(jumps, sigma, n, 0.0, cfg.sim.t_max);
            const double limit = jump_regime_limit(cfg.kernel, marked, cfg.k, cfg.p);
            if (!(limit > 0.0)) {
                degenerate.fetch_add(1);
                return;
            }
            const LssPath path =
                simulate_lss_cp(cfg.kernel, sigma, jumps, sim_for_n(cfg.sim, n, burn_in));
            const double v = power_variation(path, cfg.p, cfg.k).value_at(cfg.sim.t_max);
            const double norm =
                normalization_factor(RegimeTag::jumps, n, cfg.kernel.alpha, beta_eff, cfg.p, cfg.k);
            rel_err[jn][r] = std::abs(norm * v - limit) / limit;
        }
    });

    McReport report;
    report.mode = "verify_jump_regime";
    report.seed = cfg.seed;
    report.replications = reps;
    report.config_hash = cfg.config_hash;
    if (degenerate.load() > 0)
        report.notes.push_back("degenerate_replications: " + std::to_string(degenerate.load()));
    for (std::size_t jn = 0; jn < n_count; ++jn)
        report.rows.push_back(summarize(cfg.n_list[jn], "rel_err", rel_err[jn], 0.0));
    return report;
}

McReport run_verify_stable_scaling(const McConfig& cfg) {
    const auto* st = std::get_if<StableDriver>(&cfg.driver);
    if (!st) throw ConfigInvalid("stable-scaling verify needs a stable driver");
    if (cfg.n_list.empty()) throw ConfigInvalid("verify: n_list is empty");
    if (regime_classify(cfg.kernel.alpha, st->beta, cfg.p, cfg.k) != RegimeTag::stable_scaling)
        throw ConfigInvalid("verify: configuration is outside the stable-scaling regime");

    const double constant =
        stable_scaling_constant(cfg.kernel, st->beta, st->gamma_scale, cfg.k, cfg.p);

    const std::size_t reps = cfg.replications;
    const std::size_t n_count = cfg.n_list.size();
    std::vector<std::unique_ptr<StableLssEngine>> engines;
    for (long n : cfg.n_list)
        engines.push_back(std::make_unique<StableLssEngine>(
            cfg.kernel, *st, sim_for_n(cfg.sim, n, cfg.sim.burn_in)));
    const double burn_in = engines.front()->burn_in();

    std::vector<std::vector<double>> rel_err(n_count, std::vector<double>(reps, kNaN));
    std::vector<std::vector<double>> sup_dev(n_count, std::vector<double>(reps, kNaN));

    parallel_for(reps, cfg.threads, [&](std::size_t r) {
        Rng sigma_rng(derive_seed(cfg.seed, r, Stream::sigma));
        const SigmaPath sigma = simulate_sigma(sigma_rng, cfg.sigma, -burn_in, cfg.sim.t_max);
        for (std::size_t jn = 0; jn < n_count; ++jn) {
            Rng driver_rng(derive_seed(cfg.seed, r * n_count + jn, Stream::driver));
            const LssPath path = engines[jn]->simulate(driver_rng, sigma);
            const VariationSeries v = power_variation(path, cfg.p, cfg.k);
            const double norm = normalization_factor(RegimeTag::stable_scaling, cfg.n_list[jn],
                                                     cfg.kernel.alpha, st->beta, cfg.p, cfg.k);
            const double limit_end = constant * sigma.power_integral(cfg.p, 0.0, cfg.sim.t_max);
            rel_err[jn][r] = std::abs(norm * v.value_at(cfg.sim.t_max) - limit_end) / limit_end;
            double sup = 0.0;
            for (int j = 1; j <= 10; ++j) {
                const double t = cfg.sim.t_max * j / 10.0;
                const double limit_t = constant * sigma.power_integral(cfg.p, 0.0, t);
                sup = std::max(sup, std::abs(norm * v.value_at(t) - limit_t) / limit_end);
            }
            sup_dev[jn][r] = sup;
        }
    });

    McReport report;
    report.mode = "verify_stable_scaling";
    report.seed = cfg.seed;
    report.replications = reps;
    report.config_hash = cfg.config_hash;
    for (std::size_t jn = 0; jn < n_count; ++jn) {
        report.rows.push_back(summarize(cfg.n_list[jn], "rel_err", rel_err[jn], 0.0));
        report.rows.push_back(summarize(cfg.n_list[jn], "sup_dev", sup_dev[jn], 0.0));
    }
    return report;
}

McReport run_verify_smooth_regime(const McConfig& cfg) {
    if (cfg.n_list.empty()) throw ConfigInvalid("verify: n_list is empty");
    const double beta_eff = blumenthal_getoor(cfg.driver);
    if (regime_classify(cfg.kernel.alpha, beta_eff, cfg.p, cfg.k) != RegimeTag::smooth)
        throw ConfigInvalid("verify: configuration is outside the smooth regime");

    const std::size_t reps = cfg.replications;
    const std::size_t n_count = cfg.n_list.size();
    std::vector<std::vector<double>> rel_err(n_count, std::vector<double>(reps, kNaN));
    std::atomic<std::size_t> degenerate{0};

    McReport report;
    report.seed = cfg.seed;
    report.replications = reps;
    report.config_hash = cfg.config_hash;

    if (const auto* cp = std::get_if<CompoundPoissonDriver>(&cfg.driver)) {
        report.mode = "verify_smooth_regime_cp";
        const double burn_in = resolve_burnin(cfg, std::max(cfg.p, 1.0));
        parallel_for(reps, cfg.threads, [&](std::size_t r) {
            Rng driver_rng(derive_seed(cfg.seed, r, Stream::driver));
            Rng sigma_rng(derive_seed(cfg.seed, r, Stream::sigma));
            const DriverPath jumps =
                simulate_compound_poisson(driver_rng, *cp, -burn_in, cfg.sim.t_max);
            const SigmaPath sigma = simulate_sigma(sigma_rng, cfg.sigma, -burn_in, cfg.sim.t_max);
            if (jumps.jumps.empty()) {
                degenerate.fetch_add(1);
                return;
            }
            const double limit =
                f_power_integral_cp(cfg.kernel, cfg.k, sigma, jumps, cfg.p, 0.0, cfg.sim.t_max);
            if (!(limit > 0.0)) {
                degenerate.fetch_add(1);
                return;
            }
            for (std::size_t jn = 0; jn < n_count; ++jn) {
                const long n = cfg.n_list[jn];
                const LssPath path =
                    simulate_lss_cp(cfg.kernel, sigma, jumps, sim_for_n(cfg.sim, n, burn_in));
                const double v = power_variation(path, cfg.p, cfg.k).value_at(cfg.sim.t_max);
                const double norm = normalization_factor(RegimeTag::smooth, n, cfg.kernel.alpha,
                                                         beta_eff, cfg.p, cfg.k);
                rel_err[jn][r] = std::abs(norm * v - limit) / limit;
            }
        });
    } else {
        report.mode = "verify_smooth_regime_stable";
        const auto& st = std::get<StableDriver>(cfg.driver);
        std::vector<std::unique_ptr<StableLssEngine>> engines;
        for (long n : cfg.n_list) {
            engines.push_back(std::make_unique<StableLssEngine>(
                cfg.kernel, st, sim_for_n(cfg.sim, n, cfg.sim.burn_in)));
            engines.back()->prepare_f(cfg.k);
        }
        const double burn_in = engines.front()->burn_in();
        parallel_for(reps, cfg.threads, [&](std::size_t r) {
            Rng sigma_rng(derive_seed(cfg.seed, r, Stream::sigma));
            const SigmaPath sigma = simulate_sigma(sigma_rng, cfg.sigma, -burn_in, cfg.sim.t_max);
            for (std::size_t jn = 0; jn < n_count; ++jn) {
                Rng driver_rng(derive_seed(cfg.seed, r * n_count + jn, Stream::driver));
                std::vector<double> f_vals;
                const LssPath path = engines[jn]->simulate_with_f(driver_rng, sigma, f_vals);
                std::vector<double> grid(f_vals.size());
                for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = path.time_at(i);
                const double limit = f_power_integral(grid, f_vals, cfg.p);
                if (!(limit > 0.0)) {
                    rel_err[jn][r] = kNaN;
                    continue;
                }
                const double v = power_variation(path, cfg.p, cfg.k).value_at(cfg.sim.t_max);
                const double norm = normalization_factor(RegimeTag::smooth, cfg.n_list[jn],
                                                         cfg.kernel.alpha, st.beta, cfg.p, cfg.k);
                rel_err[jn][r] = std::abs(norm * v - limit) / limit;
            }
        });
    }

    if (degenerate.load() > 0)
        report.notes.push_back("degenerate_replications: " + std::to_string(degenerate.load()));
    for (std::size_t jn = 0; jn < n_count; ++jn)
        report.rows.push_back(summarize(cfg.n_list[jn], "rel_err", rel_err[jn], 0.0));
    return report;
}

McReport run_estimate(const EstimateConfig& cfg) {
    if (cfg.n_list.empty()) throw ConfigInvalid("estimate: n_list is empty");
    const std::vector<double> p_grid = cfg.p_grid.empty() ? default_p_grid() : cfg.p_grid;
    const double h_true = cfg.alpha_true + 1.0 / cfg.beta_true;

    std::vector<std::unique_ptr<StableLssEngine>> engines;
    for (long n : cfg.n_list) {
        SimConfig s = cfg.sim;
        s.n = n;
        engines.push_back(std::make_unique<StableLssEngine>(cfg.kernel, cfg.driver, s));
    }
    const double burn_in = engines.front()->burn_in();

    const std::size_t reps = cfg.replications;
    const std::size_t n_count = cfg.n_list.size();
    const char* stats[] = {"alpha_err", "beta_err", "h_err", "h_ratio_err", "ri_err"};
    std::vector<std::vector<std::vector<double>>> values(
        5, std::vector<std::vector<double>>(n_count, std::vector<double>(reps, kNaN)));

    parallel_for(reps, cfg.threads, [&](std::size_t r) {
        Rng sigma_rng(derive_seed(cfg.seed, r, Stream::sigma));
        const SigmaPath sigma = simulate_sigma(sigma_rng, cfg.sigma, -burn_in, cfg.sim.t_max);
        for (std::size_t jn = 0; jn < n_count; ++jn) {
            Rng driver_rng(derive_seed(cfg.seed, r * n_count + jn, Stream::driver));
            const LssPath path = engines[jn]->simulate(driver_rng, sigma);
            const EstimateReport est = fit_alpha_beta(path, p_grid);
            values[0][jn][r] = std::abs(est.alpha_hat - cfg.alpha_true);
            values[1][jn][r] = std::abs(est.beta_hat - cfg.beta_true);
            values[2][jn][r] = std::abs(est.h_hat - h_true);
            values[3][jn][r] = std::abs(estimate_H(path, cfg.ratio_p) - h_true);
            const double ri = relative_intermittency(path, cfg.ratio_p, 1, cfg.ri_time);
            const double ri_target = sigma.power_integral(cfg.ratio_p, 0.0, cfg.ri_time) /
                                     sigma.power_integral(cfg.ratio_p, 0.0, cfg.sim.t_max);
            values[4][jn][r] = std::abs(ri - ri_target);
        }
    });

    McReport report;
    report.mode = "estimate";
    report.seed = cfg.seed;
    report.replications = reps;
    report.config_hash = cfg.config_hash;
    for (std::size_t jn = 0; jn < n_count; ++jn)
        for (int s = 0; s < 5; ++s)
            report.rows.push_back(summarize(cfg.n_list[jn], stats[s], values[s][jn], 0.0));
    return report;
}

McConfig mc_from_config(const KvConfig& kv) {
    McConfig cfg;
    cfg.kernel = kernel_from_config(kv);
    cfg.driver = driver_from_config(kv);
    cfg.sigma = sigma_from_config(kv);
    cfg.sim = sim_from_config(kv);
    cfg.k = static_cast<int>(kv.get_long("var.k", 1));
    cfg.p = kv.get_double("var.p", 2.0);
    cfg.n_list = kv.get_long_list("mc.n_list");
    if (cfg.n_list.empty()) cfg.n_list = {cfg.sim.n};
    cfg.replications = static_cast<std::size_t>(kv.get_long("mc.replications", 100));
    cfg.seed = kv.get_u64("mc.seed", 1);
    cfg.threads = static_cast<int>(kv.get_long("mc.threads", 0));
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(kv.hash()));
    cfg.config_hash = buf;
    return cfg;
}

EstimateConfig estimate_from_config(const KvConfig& kv) {
    EstimateConfig cfg;
    cfg.kernel = kernel_from_config(kv);
    const DriverSpec driver = driver_from_config(kv);
    if (!std::holds_alternative<StableDriver>(driver))
        throw ConfigInvalid("estimate: requires a stable driver");
    cfg.driver = std::get<StableDriver>(driver);
    cfg.sigma = sigma_from_config(kv);
    cfg.sim = sim_from_config(kv);
    cfg.n_list = kv.get_long_list("mc.n_list");
    if (cfg.n_list.empty()) cfg.n_list = {cfg.sim.n};
    cfg.replications = static_cast<std::size_t>(kv.get_long("mc.replications", 100));
    cfg.seed = kv.get_u64("mc.seed", 1);
    cfg.threads = static_cast<int>(kv.get_long("mc.threads", 0));
    cfg.alpha_true = kv.get_double("est.alpha_true", cfg.kernel.alpha);
    cfg.beta_true = kv.get_double("est.beta_true", cfg.driver.beta);
    cfg.ratio_p = kv.get_double("est.ratio_p", 0.5);
    cfg.ri_time = kv.get_double("est.ri_time", 0.5);
    cfg.p_grid = kv.get_double_list("est.p_grid");
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(kv.hash()));
    cfg.config_hash = buf;
    return cfg;
}

} // namespace lss

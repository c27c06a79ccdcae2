#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lss/config.hpp"
#include "lss/csv.hpp"
#include "lss/describe.hpp"
#include "lss/errors.hpp"
#include "lss/estimate.hpp"
#include "lss/harness.hpp"
#include "lss/limits.hpp"
#include "lss/simulate.hpp"
#include "lss/variation.hpp"

namespace {

lss::KvConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
    lss::KvConfig kv =
        path.empty() ? lss::KvConfig::parse_string("") : lss::KvConfig::parse_file(path);
    for (const auto& item : overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw lss::ConfigInvalid("--set expects key=value, got: " + item);
        kv.set(item.substr(0, eq), item.substr(eq + 1));
    }
    return kv;
}

int run_simulate(const lss::KvConfig& kv, const std::string& out, const std::string& jumps_out) {
    const lss::KernelSpec kernel = lss::kernel_from_config(kv);
    const lss::DriverSpec driver = lss::driver_from_config(kv);
    const lss::SigmaSpec sigma_spec = lss::sigma_from_config(kv);
    const lss::SimConfig sim = lss::sim_from_config(kv);
    const std::uint64_t seed = kv.get_u64("mc.seed", 1);
    kv.allow_prefix("mc.");
    kv.allow_prefix("var.");
    kv.allow_prefix("est.");
    kv.reject_unknown();

    lss::Rng driver_rng(lss::derive_seed(seed, 0, lss::Stream::driver));
    lss::Rng sigma_rng(lss::derive_seed(seed, 0, lss::Stream::sigma));
    lss::LssPath path;
    if (const auto* st = std::get_if<lss::StableDriver>(&driver)) {
        const lss::StableLssEngine engine(kernel, *st, sim);
        const lss::SigmaPath sigma =
            lss::simulate_sigma(sigma_rng, sigma_spec, engine.window_start(), sim.t_max);
        path = engine.simulate(driver_rng, sigma);
        if (!jumps_out.empty())
            throw lss::ConfigInvalid("simulate: jump output requires a compound Poisson driver");
    } else {
        const auto& cp = std::get<lss::CompoundPoissonDriver>(driver);
        const double burn = sim.burn_in > 0.0
                                ? std::ceil(sim.burn_in)
                                : lss::burnin_truncation(kernel, 1.0, sim.tail_tol);
        const lss::DriverPath jumps =
            lss::simulate_compound_poisson(driver_rng, cp, -burn, sim.t_max);
        const lss::SigmaPath sigma = lss::simulate_sigma(sigma_rng, sigma_spec, -burn, sim.t_max);
        path = lss::simulate_lss_cp(kernel, sigma, jumps, sim);
        if (!jumps_out.empty()) lss::write_jumps_csv(jumps_out, jumps);
    }
    path.provenance.driver = lss::describe(driver);
    path.provenance.sigma = lss::describe(sigma_spec);
    path.provenance.seed = seed;
    lss::write_path_csv(out, path);
    std::cout << "wrote " << out << " (" << path.values.size() << " samples)\n";
    return 0;
}

int run_powervar(const std::string& in, const std::string& out, double p, int k, double alpha,
                 double beta) {
    const lss::LssPath path = lss::read_path_csv(in);
    const lss::VariationSeries series = lss::power_variation(path, p, k);
    std::vector<double> normalized;
    std::string regime_name = "unspecified";
    if (alpha > 0.0) {
        const lss::RegimeTag tag = lss::regime_classify(alpha, beta, p, k);
        regime_name = lss::to_string(tag);
        if (tag != lss::RegimeTag::critical) {
            const double norm = lss::normalization_factor(tag, path.n, alpha, beta, p, k);
            normalized.resize(series.values.size());
            for (std::size_t i = 0; i < normalized.size(); ++i)
                normalized[i] = norm * series.values[i];
        }
    }
    lss::write_variation_csv(out, series, normalized, regime_name, path.provenance);
    std::cout << "wrote " << out << " (V at t_max = " << lss::format_double(series.values.back())
              << ", regime " << regime_name << ")\n";
    return 0;
}

int run_verify(const lss::KvConfig& kv, const std::string& out) {
    const std::string mode = kv.require_string("mc.mode");
    const lss::McConfig cfg = lss::mc_from_config(kv);
    kv.allow_prefix("est.");
    kv.reject_unknown();
    lss::McReport report;
    if (mode == "jump_regime")
        report = lss::run_verify_jump_regime(cfg);
    else if (mode == "stable_scaling")
        report = lss::run_verify_stable_scaling(cfg);
    else if (mode == "smooth_regime")
        report = lss::run_verify_smooth_regime(cfg);
    else
        throw lss::ConfigInvalid(
            "mc.mode must be jump_regime, stable_scaling, or smooth_regime");
    if (out.empty())
        std::cout << lss::render_mc_csv(report);
    else {
        lss::write_mc_csv(out, report);
        std::cout << "wrote " << out << "\n";
    }
    return 0;
}

int run_estimate_cmd(const lss::KvConfig& kv, const std::string& out) {
    const lss::EstimateConfig cfg = lss::estimate_from_config(kv);
    kv.allow_prefix("var.");
    kv.reject_unknown();
    const lss::McReport report = lss::run_estimate(cfg);
    if (out.empty())
        std::cout << lss::render_mc_csv(report);
    else {
        lss::write_mc_csv(out, report);
        std::cout << "wrote " << out << "\n";
    }
    return 0;
}

int run_oracle(const std::string& name, double alpha, int k, double p, double mark, double beta,
               double q, double c0, double scale) {
    double value = 0.0;
    if (name == "vm") {
        value = lss::vm_series(lss::HkParams{alpha, k}, p, mark);
    } else if (name == "hk_integral") {
        value = lss::hk_abs_power_integral(lss::HkParams{alpha, k}, q);
    } else if (name == "abs_moment") {
        value = lss::abs_moment_stable(beta, p);
    } else if (name == "scaling_constant") {
        lss::KernelSpec kernel;
        kernel.family = lss::KernelFamily::gamma;
        kernel.c0 = c0;
        kernel.alpha = alpha;
        kernel.decay = 1.0;
        value = lss::stable_scaling_constant(kernel, beta, scale, k, p);
    } else {
        throw lss::ConfigInvalid(
            "oracle name must be vm, hk_integral, abs_moment, or scaling_constant");
    }
    std::cout << lss::format_double(value) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulation and inference toolkit for moving-average jump processes"};
    app.require_subcommand(1);

    std::string config_path, out_path, jumps_out, path_in, oracle_name;
    std::vector<std::string> overrides;
    double p = 2.0, alpha = 0.0, beta = 0.0, mark = 0.0, q = 1.0, c0 = 1.0, scale = 1.0;
    int k = 1;

    auto* sim_cmd = app.add_subcommand("simulate", "draw one path and write it as CSV");
    sim_cmd->add_option("--config", config_path, "key=value config file");
    sim_cmd->add_option("--set", overrides, "override config entries (key=value)");
    sim_cmd->add_option("--out", out_path, "output CSV")->required();
    sim_cmd->add_option("--jumps-out", jumps_out, "also write the jump record CSV");

    auto* pv_cmd = app.add_subcommand("powervar", "cumulative power variation of a stored path");
    pv_cmd->add_option("--in", path_in, "path CSV produced by simulate")->required();
    pv_cmd->add_option("--out", out_path, "output CSV")->required();
    pv_cmd->add_option("--p", p, "variation exponent")->required();
    pv_cmd->add_option("--k", k, "difference order")->required();
    pv_cmd->add_option("--alpha", alpha, "kernel exponent for normalization");
    pv_cmd->add_option("--beta", beta, "driver activity index for normalization");

    auto* ver_cmd = app.add_subcommand("verify", "Monte Carlo limit checks (mc.mode selects the regime)");
    ver_cmd->add_option("--config", config_path, "key=value config file")->required();
    ver_cmd->add_option("--set", overrides, "override config entries (key=value)");
    ver_cmd->add_option("--out", out_path, "output CSV (default stdout)");

    auto* est_cmd = app.add_subcommand("estimate", "estimator sampling distributions");
    est_cmd->add_option("--config", config_path, "key=value config file")->required();
    est_cmd->add_option("--set", overrides, "override config entries (key=value)");
    est_cmd->add_option("--out", out_path, "output CSV (default stdout)");

    auto* ora_cmd = app.add_subcommand("oracle", "print one limit constant");
    ora_cmd->add_option("--name", oracle_name, "vm | hk_integral | abs_moment | scaling_constant")
        ->required();
    ora_cmd->add_option("--alpha", alpha, "kernel exponent");
    ora_cmd->add_option("--k", k, "difference order");
    ora_cmd->add_option("--p", p, "variation exponent");
    ora_cmd->add_option("--mark", mark, "cell position in [0,1)");
    ora_cmd->add_option("--beta", beta, "stable index");
    ora_cmd->add_option("--q", q, "integral exponent");
    ora_cmd->add_option("--c0", c0, "kernel constant");
    ora_cmd->add_option("--scale", scale, "driver scale");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*sim_cmd) return run_simulate(load_config(config_path, overrides), out_path, jumps_out);
        if (*pv_cmd) return run_powervar(path_in, out_path, p, k, alpha, beta);
        if (*ver_cmd) return run_verify(load_config(config_path, overrides), out_path);
        if (*est_cmd) return run_estimate_cmd(load_config(config_path, overrides), out_path);
        if (*ora_cmd) return run_oracle(oracle_name, alpha, k, p, mark, beta, q, c0, scale);
    } catch (const lss::ConfigInvalid& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const lss::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

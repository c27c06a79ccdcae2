#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lss/config.hpp"
#include "lss/driver.hpp"
#include "lss/kernel.hpp"
#include "lss/sigma.hpp"
#include "lss/simulate.hpp"

namespace lss {

// Runs fn(0..count-1) on the given number of threads. Each index writes only its
// own result slot inside fn, so outputs are identical to a serial run.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

struct McRow {
    long n = 0;
    std::string statistic;
    double mean = 0.0;
    double median = 0.0;
    double q05 = 0.0;
    double q95 = 0.0;
    double target = 0.0;
    std::size_t count = 0; // replications contributing (degenerate draws excluded)
};

struct McReport {
    std::string mode;
    std::uint64_t seed = 0;
    std::size_t replications = 0;
    std::string config_hash;
    std::vector<std::string> notes;
    std::vector<McRow> rows;
};

struct McConfig {
    KernelSpec kernel;
    DriverSpec driver;
    SigmaSpec sigma;
    SimConfig sim;           // n is taken from n_list entry by entry
    int k = 1;
    double p = 2.0;
    std::vector<long> n_list;
    std::size_t replications = 100;
    std::uint64_t seed = 1;
    int threads = 0; // 0 = hardware concurrency
    std::string config_hash;
};

// Convergence checks against independently computed limits. Statistic reported
// per n: "rel_err" (finite-jump regimes) or "sup_dev" (functional comparison for
// the stable-scaling regime).
McReport run_verify_jump_regime(const McConfig& cfg);
McReport run_verify_stable_scaling(const McConfig& cfg);
McReport run_verify_smooth_regime(const McConfig& cfg);

struct EstimateConfig {
    KernelSpec kernel;
    StableDriver driver;
    SigmaSpec sigma;
    SimConfig sim;
    std::vector<long> n_list;
    std::size_t replications = 100;
    std::uint64_t seed = 1;
    int threads = 0;
    double alpha_true = 0.0; // targets for the error statistics
    double beta_true = 0.0;
    double ratio_p = 0.5;      // exponent of the lag-ratio H estimate
    double ri_time = 0.5;      // relative-intermittency evaluation time
    std::vector<double> p_grid; // empty = default grid
    std::string config_hash;
};

// Estimator sampling distributions: rows alpha_err / beta_err / h_err / h_ratio_err
// / ri carry abs-error quantiles (ri carries the raw statistic and its target).
McReport run_estimate(const EstimateConfig& cfg);

McConfig mc_from_config(const KvConfig& cfg);
EstimateConfig estimate_from_config(const KvConfig& cfg);

} // namespace lss

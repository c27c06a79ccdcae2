#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "lss/driver.hpp"
#include "lss/fft.hpp"
#include "lss/kernel.hpp"
#include "lss/rng.hpp"
#include "lss/sigma.hpp"

namespace lss {

struct SimConfig {
    long n = 256;           // sampling frequency; observation step 1/n
    double t_max = 1.0;     // observations cover [0, t_max]
    double burn_in = 0.0;   // history length kept before 0; 0 requests the automatic choice
    int fine_factor = 8;    // driver cells per observation step
    double tail_tol = 1e-6; // truncation tolerance for the automatic burn-in
    void validate() const;
};

// Smallest whole-number history length T >= 2 such that dropping the driver on
// (-inf, -T) contributes less than tail_tol to the q-th power kernel integral
// governing the truncation error. Throws NonIntegrableTail when no finite T works
// (pure power memory without the differenced kernel form).
double burnin_truncation(const KernelSpec& kernel, double q, double tail_tol);

struct PathProvenance {
    std::string kernel, driver, sigma;
    std::uint64_t seed = 0;
    double burn_in = 0.0;
    int fine_factor = 1;
    long n = 0;
};

struct LssPath {
    long n = 0;
    double t_max = 1.0;
    std::vector<double> values; // X(i/n), i = 0 .. floor(n t_max)
    PathProvenance provenance;
    double time_at(std::size_t i) const { return static_cast<double>(i) / n; }
};

// Exact moving-average evaluation for a finite jump set:
//   X_t = sum_j [g(t - s_j) - g0(-s_j)] sigma(s_j-) w_j.
double lss_value_cp(const KernelSpec& kernel, const SigmaPath& sigma, const DriverPath& jumps,
                    double t);
LssPath simulate_lss_cp(const KernelSpec& kernel, const SigmaPath& sigma, const DriverPath& jumps,
                        const SimConfig& cfg);

// F_u = integral_{s < u} g^(k)(u - s) sigma(s-) dL_s, exact over a finite jump set.
double f_path_value_cp(const KernelSpec& kernel, int k, const SigmaPath& sigma,
                       const DriverPath& jumps, double u);

// Stable-driven paths on a fine cell grid via FFT convolution. The kernel table
// and its transform depend only on (kernel, cfg), so one engine serves every
// replication; simulate() is safe to call concurrently with distinct generators.
class StableLssEngine {
  public:
    StableLssEngine(const KernelSpec& kernel, const StableDriver& driver, const SimConfig& cfg);
    ~StableLssEngine();

    LssPath simulate(Rng& rng, const SigmaPath& sigma) const;

    // Builds the k-th derivative kernel transform; call once before any
    // simulate_with_f (not thread safe, unlike the simulate calls themselves).
    void prepare_f(int k);

    // Same driver increments produce both the path and the k-th derivative
    // moving average F sampled at the observation times (f_out[i] ~ F_{i/n}).
    LssPath simulate_with_f(Rng& rng, const SigmaPath& sigma, std::vector<double>& f_out) const;

    double burn_in() const { return burn_in_; }
    double cell_step() const { return cell_step_; }
    double window_start() const { return -burn_in_; }
    long observations() const { return n_obs_; }

  private:
    std::vector<double> draw_weights(Rng& rng, const SigmaPath& sigma) const;

    KernelSpec kernel_;
    StableDriver driver_;
    SimConfig cfg_;
    double burn_in_ = 0.0;
    double cell_step_ = 0.0;
    long n_obs_ = 0;          // floor(n t_max)
    std::size_t n_cells_ = 0; // driver cells covering [-burn_in, t_max]
    std::size_t b_cells_ = 0; // cells before time 0
    std::unique_ptr<RealConvolver> conv_;
    std::unique_ptr<RealConvolver> conv_f_;
    int f_order_ = -1;
};

} // namespace lss

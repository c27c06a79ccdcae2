#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace lss {

// Named RNG streams so driver noise, volatility noise, and limit-law marks can be
// varied or replayed independently of one another.
enum class Stream : std::uint64_t { driver = 1, sigma = 2, marks = 3 };

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
} // namespace detail

// Counter-based seed derivation: two chained splitmix64 finalizer passes over
// (master, replication, stream). Replications and streams are decorrelated without
// any shared mutable state, so parallel and serial execution agree exactly.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replication, Stream stream) {
    std::uint64_t z = detail::splitmix64(master ^ (0xA0761D6478BD642FULL * (replication + 1)));
    z = detail::splitmix64(z ^ (0xE7037ED1A0B428DBULL * static_cast<std::uint64_t>(stream)));
    return z;
}

// All variate transforms are implemented here on top of mt19937_64 (whose output
// sequence the C++ standard pins down exactly); std::*_distribution output is
// implementation-defined and would break the bit-identical reproducibility contract.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    // [0, 1)
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // (0, 1), never returns an endpoint
    double open01() { return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    double exponential() { return -std::log(open01()); }

    // +1 or -1 with probability 1/2 each
    double sign() { return (eng_() >> 63) ? 1.0 : -1.0; }

    // Knuth product method; splits large means so the running product stays normal.
    std::uint64_t poisson(double mean) {
        if (mean <= 0.0) return 0;
        if (mean > 500.0) {
            double half = mean / 2.0;
            return poisson(half) + poisson(mean - half);
        }
        const double limit = std::exp(-mean);
        std::uint64_t count = 0;
        double prod = open01();
        while (prod > limit) {
            ++count;
            prod *= open01();
        }
        return count;
    }

    // Standard symmetric beta-stable variate, characteristic function exp(-|u|^beta).
    // Chambers-Mallows-Stuck transform; the symmetric form below is continuous in beta
    // and reduces to tan(V) (Cauchy) at beta = 1 because pow(x, 0) == 1.
    double stable(double beta) {
        const double v = 3.14159265358979323846 * (open01() - 0.5); // (-pi/2, pi/2)
        const double w = exponential();
        const double bv = beta * v;
        return (std::sin(bv) / std::pow(std::cos(v), 1.0 / beta)) *
               std::pow(std::cos(v - bv) / w, (1.0 - beta) / beta);
    }

    double stable(double beta, double scale) { return scale * stable(beta); }

    // One-sided Pareto with P(X > x) = (min_size/x)^tail_index for x >= min_size.
    double pareto(double tail_index, double min_size) {
        return min_size * std::pow(open01(), -1.0 / tail_index);
    }

  private:
    std::mt19937_64 eng_;
};

} // namespace lss

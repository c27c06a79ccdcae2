#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "lss/driver.hpp"
#include "lss/errors.hpp"
#include "lss/rng.hpp"

using namespace lss;

TEST_CASE("seed derivation decorrelates replications and streams") {
    const auto a = derive_seed(42, 0, Stream::driver);
    const auto b = derive_seed(42, 0, Stream::sigma);
    const auto c = derive_seed(42, 1, Stream::driver);
    const auto d = derive_seed(43, 0, Stream::driver);
    CHECK(a != b);
    CHECK(a != c);
    CHECK(a != d);
    CHECK(derive_seed(42, 0, Stream::driver) == a);
}

TEST_CASE("same seed replays the same stable increments") {
    Rng r1(777), r2(777);
    const auto x = simulate_stable_increments(r1, 1.5, 1.0, 1.0 / 256, 512);
    const auto y = simulate_stable_increments(r2, 1.5, 1.0, 1.0 / 256, 512);
    REQUIRE(x.size() == 512);
    CHECK(x == y);
}

TEST_CASE("beta=1 stable sampler is standard Cauchy") {
    // P(|C| <= 1) = 1/2 and P(|C| <= tan(3pi/8)) = 3/4
    Rng rng(2024);
    const std::size_t n = 200000;
    std::size_t below1 = 0, below2 = 0;
    const double q75 = std::tan(3.0 * M_PI / 8.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double z = std::fabs(sample_stable(rng, 1.0, 1.0));
        if (z <= 1.0) ++below1;
        if (z <= q75) ++below2;
    }
    CHECK(static_cast<double>(below1) / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(static_cast<double>(below2) / n == doctest::Approx(0.75).epsilon(0.01));
}

TEST_CASE("stable sampler matches its characteristic function") {
    Rng rng(9);
    const double beta = 1.5;
    const std::size_t n = 200000;
    double acc_u1 = 0.0, acc_u2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double z = sample_stable(rng, beta, 1.0);
        acc_u1 += std::cos(z);
        acc_u2 += std::cos(0.5 * z);
    }
    // 4+ standard errors of slack at this sample size
    CHECK(acc_u1 / n == doctest::Approx(std::exp(-1.0)).epsilon(0.02));
    CHECK(acc_u2 / n == doctest::Approx(std::exp(-std::pow(0.5, beta))).epsilon(0.02));
}

TEST_CASE("stable sampler signs are balanced") {
    Rng rng(5);
    double acc = 0.0;
    const std::size_t n = 100000;
    for (std::size_t i = 0; i < n; ++i) acc += (sample_stable(rng, 0.8, 1.0) > 0.0) ? 1.0 : -1.0;
    CHECK(std::fabs(acc / n) < 0.02);
}

static double hill_tail_index(std::vector<double> abs_draws, std::size_t top) {
    std::sort(abs_draws.begin(), abs_draws.end(), std::greater<double>());
    double acc = 0.0;
    for (std::size_t i = 0; i < top; ++i) acc += std::log(abs_draws[i] / abs_draws[top]);
    return static_cast<double>(top) / acc;
}

TEST_CASE("stable tails have the advertised exponent") {
    Rng rng(31);
    const double beta = 1.5;
    std::vector<double> draws(300000);
    for (auto& d : draws) d = std::fabs(sample_stable(rng, beta, 1.0));
    CHECK(hill_tail_index(std::move(draws), 2000) == doctest::Approx(beta).epsilon(0.08));
}

TEST_CASE("pareto tails have the advertised exponent") {
    Rng rng(32);
    std::vector<double> draws(300000);
    for (auto& d : draws) d = rng.pareto(2.5, 0.4);
    CHECK(*std::min_element(draws.begin(), draws.end()) >= 0.4);
    CHECK(hill_tail_index(std::move(draws), 4000) == doctest::Approx(2.5).epsilon(0.08));
}

TEST_CASE("increment scale follows the self similarity law") {
    // increments over cells of width h carry scale gamma * h^(1/beta):
    // E|X_h|^p / E|X_1|^p = h^(p/beta) for p < beta
    Rng rng(71);
    const double beta = 1.2, p = 0.5, h = 1.0 / 64;
    const std::size_t n = 200000;
    const auto fine = simulate_stable_increments(rng, beta, 1.0, h, n);
    const auto unit = simulate_stable_increments(rng, beta, 1.0, 1.0, n);
    double mf = 0.0, mu = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mf += std::pow(std::fabs(fine[i]), p);
        mu += std::pow(std::fabs(unit[i]), p);
    }
    CHECK(mf / mu == doctest::Approx(std::pow(h, p / beta)).epsilon(0.03));
}

TEST_CASE("compound poisson path respects window, order, and law") {
    Rng rng(11);
    const CompoundPoissonDriver cp{3.0, RademacherLaw{0.7}};
    const auto path = simulate_compound_poisson(rng, cp, -2.0, 1.0);
    CHECK(path.window_start == -2.0);
    CHECK(path.window_end == 1.0);
    CHECK(path.has_jumps);
    for (std::size_t i = 0; i < path.jumps.size(); ++i) {
        CHECK(path.jumps[i].time >= -2.0);
        CHECK(path.jumps[i].time <= 1.0);
        CHECK(std::fabs(path.jumps[i].size) == doctest::Approx(0.7));
        if (i > 0) CHECK(path.jumps[i - 1].time <= path.jumps[i].time);
    }
}

TEST_CASE("compound poisson jump count has the right mean") {
    Rng rng(12);
    const CompoundPoissonDriver cp{5.0, RademacherLaw{1.0}};
    double acc = 0.0;
    const int reps = 4000;
    for (int r = 0; r < reps; ++r)
        acc += static_cast<double>(simulate_compound_poisson(rng, cp, 0.0, 2.0).jumps.size());
    CHECK(acc / reps == doctest::Approx(10.0).epsilon(0.03));
}

TEST_CASE("atom law draws only the listed sizes with the listed frequencies") {
    Rng rng(13);
    const AtomsLaw law{{{1.0, 0.25}, {2.0, 0.75}}};
    const CompoundPoissonDriver cp{80.0, law};
    std::size_t small = 0, large = 0;
    for (int r = 0; r < 200; ++r) {
        const auto path = simulate_compound_poisson(rng, cp, 0.0, 1.0);
        for (const auto& j : path.jumps) {
            const double a = std::fabs(j.size);
            if (a == doctest::Approx(1.0)) ++small;
            else if (a == doctest::Approx(2.0)) ++large;
            else FAIL("unexpected atom size ", a);
        }
    }
    const double frac = static_cast<double>(small) / static_cast<double>(small + large);
    CHECK(frac == doctest::Approx(0.25).epsilon(0.1));
}

TEST_CASE("threshold split is an ordered partition") {
    Rng rng(14);
    const CompoundPoissonDriver cp{40.0, TwoSidedParetoLaw{1.5, 0.2}};
    const auto path = simulate_compound_poisson(rng, cp, 0.0, 1.0);
    const auto [big, small] = split_by_threshold(path.jumps, 0.5);
    CHECK(big.size() + small.size() == path.jumps.size());
    for (const auto& j : big) CHECK(std::fabs(j.size) > 0.5);
    for (const auto& j : small) CHECK(std::fabs(j.size) <= 0.5);
    // merging by time recovers the original sequence
    std::vector<JumpRecord> merged;
    merged.insert(merged.end(), big.begin(), big.end());
    merged.insert(merged.end(), small.begin(), small.end());
    std::sort(merged.begin(), merged.end(),
              [](const JumpRecord& a, const JumpRecord& b) { return a.time < b.time; });
    REQUIRE(merged.size() == path.jumps.size());
    for (std::size_t i = 0; i < merged.size(); ++i) {
        CHECK(merged[i].time == path.jumps[i].time);
        CHECK(merged[i].size == path.jumps[i].size);
    }
}

TEST_CASE("jump binning uses half open cells") {
    const std::vector<JumpRecord> jumps = {
        {0.0, 10.0},   // at grid_start: dropped
        {0.25, 1.0},   // interior of cell 0
        {0.5, 2.0},    // right edge of cell 0
        {0.500001, 4.0}, // just past: cell 1
        {1.0, 8.0},    // right edge of cell 1
        {1.2, 16.0},   // beyond the grid: dropped
    };
    const auto cells = bin_jumps(jumps, 0.0, 0.5, 2);
    REQUIRE(cells.size() == 2);
    CHECK(cells[0] == 3.0);
    CHECK(cells[1] == 12.0);
}

TEST_CASE("activity index per driver family") {
    CHECK(blumenthal_getoor(StableDriver{1.7, 2.0}) == 1.7);
    CHECK(blumenthal_getoor(CompoundPoissonDriver{3.0, RademacherLaw{1.0}}) == 0.0);
}

TEST_CASE("driver validation rejects bad parameters") {
    CHECK_THROWS_AS(validate(DriverSpec{StableDriver{2.0, 1.0}}), ConfigInvalid);
    CHECK_THROWS_AS(validate(DriverSpec{StableDriver{0.0, 1.0}}), ConfigInvalid);
    CHECK_THROWS_AS(validate(DriverSpec{StableDriver{1.5, 0.0}}), ConfigInvalid);
    CHECK_THROWS_AS(validate(DriverSpec{CompoundPoissonDriver{0.0, RademacherLaw{1.0}}}),
                    ConfigInvalid);
    CHECK_THROWS_AS(validate(DriverSpec{CompoundPoissonDriver{1.0, RademacherLaw{-1.0}}}),
                    ConfigInvalid);
    CHECK_THROWS_AS(validate(DriverSpec{CompoundPoissonDriver{1.0, TwoSidedParetoLaw{0.0, 1.0}}}),
                    ConfigInvalid);
    CHECK_THROWS_AS(
        validate(DriverSpec{CompoundPoissonDriver{1.0, AtomsLaw{{{1.0, 0.5}, {2.0, 0.4}}}}}),
        ConfigInvalid);
    CHECK_NOTHROW(validate(DriverSpec{StableDriver{1.5, 1.0}}));
    CHECK_NOTHROW(validate(DriverSpec{CompoundPoissonDriver{1.0, AtomsLaw{{{1.0, 1.0}}}}}));
}

TEST_CASE("poisson sampler mean and variance") {
    Rng rng(99);
    const double mean = 7.3;
    const std::size_t n = 60000;
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = static_cast<double>(rng.poisson(mean));
        s1 += v;
        s2 += v * v;
    }
    const double m = s1 / n;
    const double var = s2 / n - m * m;
    CHECK(m == doctest::Approx(mean).epsilon(0.02));
    CHECK(var == doctest::Approx(mean).epsilon(0.05));
}

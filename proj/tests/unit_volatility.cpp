#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "lss/errors.hpp"
#include "lss/quadrature.hpp"
#include "lss/rng.hpp"
#include "lss/sigma.hpp"

using namespace lss;

TEST_CASE("constant path is constant") {
    Rng rng(1);
    const auto path = simulate_sigma(rng, SigmaSpec{ConstantSigma{2.5}}, -1.0, 1.0);
    CHECK(path.value(-1.0) == 2.5);
    CHECK(path.value(0.3) == 2.5);
    CHECK(path.left_limit(0.3) == 2.5);
    CHECK(path.sup_abs() == 2.5);
    CHECK(path.breakpoints().empty());
    CHECK(path.power_integral(2.0, -1.0, 1.0) == doctest::Approx(2.0 * 6.25).epsilon(1e-14));
}

TEST_CASE("linear and cosine shapes evaluate pointwise") {
    Rng rng(1);
    const DeterministicSigma lin{"linear", 0.5, 2.0, 1.0};
    const auto lp = simulate_sigma(rng, SigmaSpec{lin}, 0.0, 1.0);
    CHECK(lp.value(0.25) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(lp.left_limit(0.25) == doctest::Approx(1.0).epsilon(1e-15));

    const DeterministicSigma cosa{"cosine", 1.0, 0.5, 3.0};
    const auto cp = simulate_sigma(rng, SigmaSpec{cosa}, 0.0, 2.0);
    CHECK(cp.value(0.7) == doctest::Approx(1.0 + 0.5 * std::cos(2.1)).epsilon(1e-15));
    CHECK(cp.sup_abs() == doctest::Approx(1.5));
}

TEST_CASE("deterministic power integral matches quadrature") {
    Rng rng(1);
    const DeterministicSigma cosa{"cosine", 1.0, 0.5, 3.0};
    const auto path = simulate_sigma(rng, SigmaSpec{cosa}, 0.0, 2.0);
    const double got = path.power_integral(1.7, 0.2, 1.9);
    const double want = adaptive_simpson(
        [&](double s) { return std::pow(std::fabs(1.0 + 0.5 * std::cos(3.0 * s)), 1.7); }, 0.2,
        1.9, 1e-12);
    CHECK(got == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("step path has cadlag values and exact integrals") {
    Rng rng(1);
    const StepSigma step{{0.4, 0.8}, {1.0, 2.0, 0.5}};
    const auto path = simulate_sigma(rng, SigmaSpec{step}, 0.0, 1.0);
    CHECK(path.value(0.0) == 1.0);
    CHECK(path.value(0.4) == 2.0);        // cadlag: right-continuous at the break
    CHECK(path.left_limit(0.4) == 1.0);   // left limit keeps the old level
    CHECK(path.value(0.79) == 2.0);
    CHECK(path.value(0.8) == 0.5);
    CHECK(path.left_limit(0.8) == 2.0);
    CHECK(path.sup_abs() == 2.0);
    REQUIRE(path.breakpoints().size() == 2);
    CHECK(path.breakpoints()[0] == 0.4);
    // integral of sigma^2: 0.4*1 + 0.4*4 + 0.2*0.25
    CHECK(path.power_integral(2.0, 0.0, 1.0) == doctest::Approx(2.05).epsilon(1e-14));
    // sub-window cutting across one break
    CHECK(path.power_integral(1.0, 0.3, 0.5) ==
          doctest::Approx(0.1 * 1.0 + 0.1 * 2.0).epsilon(1e-14));
}

TEST_CASE("jump driven path decays to its mean and jumps at jump times") {
    Rng rng(404);
    const OuSigma ou{1.0, 2.0, CompoundPoissonDriver{4.0, RademacherLaw{0.6}}};
    const auto path = simulate_sigma(rng, SigmaSpec{ou}, -1.0, 1.0);
    const auto& breaks = path.breakpoints();
    REQUIRE(!breaks.empty());

    // starts at the mean
    CHECK(path.value(-1.0) == doctest::Approx(1.0));

    // brute-force evaluation: start at the mean, decay between jumps, add sizes
    Rng replay(404);
    auto check_at = [&](double s) {
        double v = 1.0;
        double t = -1.0;
        for (const auto b : breaks) {
            if (b > s) break;
            v = 1.0 + (v - 1.0) * std::exp(-2.0 * (b - t));
            const double post = path.value(b);
            // post-jump value stored by the path equals decayed value + jump size
            CHECK(std::fabs(std::fabs(post - v) - 0.6) < 1e-9);
            v = post;
            t = b;
        }
        v = 1.0 + (v - 1.0) * std::exp(-2.0 * (s - t));
        CHECK(path.value(s) == doctest::Approx(v).epsilon(1e-12));
    };
    check_at(-0.5);
    check_at(0.0);
    check_at(0.37);
    check_at(1.0);

    // left limit at a jump differs from the value by exactly the jump size
    const double b0 = breaks.front();
    CHECK(std::fabs(path.value(b0) - path.left_limit(b0)) == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("jump driven power integral matches quadrature between breaks") {
    Rng rng(405);
    const OuSigma ou{0.5, 1.5, CompoundPoissonDriver{3.0, RademacherLaw{1.0}}};
    const auto path = simulate_sigma(rng, SigmaSpec{ou}, 0.0, 2.0);
    const double got = path.power_integral(1.3, 0.1, 1.9);
    const double want = adaptive_simpson(
        [&](double s) { return std::pow(std::fabs(path.value(s)), 1.3); }, 0.1, 1.9, 1e-11);
    // quadrature never sees the kinks exactly, so allow a modest tolerance
    CHECK(got == doctest::Approx(want).epsilon(1e-6));
}

TEST_CASE("jump driven sup bound dominates the path") {
    Rng rng(406);
    const OuSigma ou{1.0, 1.0, CompoundPoissonDriver{6.0, TwoSidedParetoLaw{2.0, 0.3}}};
    const auto path = simulate_sigma(rng, SigmaSpec{ou}, 0.0, 1.0);
    const double bound = path.sup_abs();
    for (int i = 0; i <= 1000; ++i) {
        const double s = i / 1000.0;
        CHECK(std::fabs(path.value(s)) <= bound + 1e-12);
    }
}

TEST_CASE("same seed replays the same jump driven path") {
    const OuSigma ou{1.0, 2.0, CompoundPoissonDriver{5.0, RademacherLaw{0.5}}};
    Rng r1(88), r2(88);
    const auto p1 = simulate_sigma(r1, SigmaSpec{ou}, 0.0, 1.0);
    const auto p2 = simulate_sigma(r2, SigmaSpec{ou}, 0.0, 1.0);
    REQUIRE(p1.breakpoints() == p2.breakpoints());
    for (int i = 0; i <= 50; ++i) CHECK(p1.value(i / 50.0) == p2.value(i / 50.0));
}

TEST_CASE("randomness flag per spec") {
    CHECK_FALSE(is_random(SigmaSpec{ConstantSigma{1.0}}));
    CHECK_FALSE(is_random(SigmaSpec{DeterministicSigma{}}));
    CHECK_FALSE(is_random(SigmaSpec{StepSigma{{0.5}, {1.0, 2.0}}}));
    CHECK(is_random(SigmaSpec{OuSigma{1.0, 1.0, CompoundPoissonDriver{1.0, RademacherLaw{1.0}}}}));
}

TEST_CASE("validation rejects malformed specs") {
    CHECK_THROWS_AS(validate(SigmaSpec{DeterministicSigma{"cubic", 1.0, 0.0, 1.0}}),
                    ConfigInvalid);
    CHECK_THROWS_AS(validate(SigmaSpec{StepSigma{{0.5, 0.4}, {1.0, 2.0, 3.0}}}), ConfigInvalid);
    CHECK_THROWS_AS(validate(SigmaSpec{StepSigma{{0.5}, {1.0}}}), ConfigInvalid);
    CHECK_THROWS_AS(
        validate(SigmaSpec{OuSigma{1.0, -1.0, CompoundPoissonDriver{1.0, RademacherLaw{1.0}}}}),
        ConfigInvalid);
    CHECK_NOTHROW(validate(SigmaSpec{StepSigma{{0.5}, {1.0, 2.0}}}));
}

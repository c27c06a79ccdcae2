#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lss/errors.hpp"
#include "lss/quadrature.hpp"

using namespace lss;

TEST_CASE("adaptive simpson on smooth integrands") {
    CHECK(adaptive_simpson([](double x) { return x * x; }, 0.0, 1.0, 1e-12) ==
          doctest::Approx(1.0 / 3).epsilon(1e-10));
    CHECK(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-12) ==
          doctest::Approx(2.0).epsilon(1e-10));
    CHECK(adaptive_simpson([](double x) { return std::exp(-x); }, 0.0, 40.0, 1e-12) ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("left power substitution absorbs endpoint singularities") {
    // integral_0^1 x^(-1/2) dx = 2
    const double v =
        adaptive_simpson_left_power([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 4.0, 1e-11);
    CHECK(v == doctest::Approx(2.0).epsilon(1e-8));
    // integral_2^3 (x-2)^0.3 dx = 1/1.3
    const double w = adaptive_simpson_left_power([](double x) { return std::pow(x - 2.0, 0.3); },
                                                 2.0, 3.0, 10.0, 1e-11);
    CHECK(w == doctest::Approx(1.0 / 1.3).epsilon(1e-9));
}

TEST_CASE("eval budget exhaustion reports failure") {
    auto nasty = [](double x) { return std::sin(1.0 / (x + 1e-300)); };
    CHECK_THROWS_AS(adaptive_simpson(nasty, 0.0, 1.0, 1e-16, 60, 2000), NotConverged);
}

TEST_CASE("trapezoid matches closed forms") {
    const double grid[] = {0.0, 0.5, 1.0, 2.0};
    const double lin[] = {1.0, 2.0, 3.0, 5.0}; // 1 + 2x
    CHECK(trapezoid(grid, lin, 4) == doctest::Approx(6.0).epsilon(1e-14));
}

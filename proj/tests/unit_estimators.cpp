#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstddef>
#include <vector>

#include "lss/errors.hpp"
#include "lss/estimate.hpp"

using namespace lss;

namespace {

LssPath make_path(std::vector<double> values, long n) {
    LssPath p;
    p.n = n;
    p.t_max = static_cast<double>(values.size() - 1) / n;
    p.values = std::move(values);
    return p;
}

LssPath linear_path(long n, double slope) {
    std::vector<double> v(n + 1);
    for (long i = 0; i <= n; ++i) v[i] = slope * i / n;
    return make_path(std::move(v), n);
}

// n - 1 alternating increments of size n^(-alpha - 1/beta) plus one of size
// n^(-alpha): the bulk drives |dX|^p sums for p < beta, the spike for p > beta,
// reproducing the two-branch scaling law exactly up to the crossover.
LssPath two_scale_path(long n, double alpha, double beta) {
    const double bulk = std::pow(static_cast<double>(n), -alpha - 1.0 / beta);
    const double spike = std::pow(static_cast<double>(n), -alpha);
    std::vector<double> v(n + 1);
    double x = 0.0;
    for (long i = 1; i <= n; ++i) {
        if (i == n / 2)
            x += spike;
        else
            x += (i % 2) ? bulk : -bulk;
        v[i] = x;
    }
    return make_path(std::move(v), n);
}

} // namespace

TEST_CASE("exponent grid covers (0, 3] in quarter steps") {
    const auto g = default_p_grid();
    REQUIRE(g.size() == 12);
    CHECK(g.front() == 0.25);
    CHECK(g.back() == 3.0);
}

TEST_CASE("scale statistic on a linear path") {
    const long n = 1024;
    const auto path = linear_path(n, 1.0);
    // V(p) = n^(1-p) so S = p - 1
    CHECK(scale_stat(path, 0.5) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(scale_stat(path, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("path scaling shifts the scale statistic") {
    const long n = 512;
    const auto base = linear_path(n, 1.0);
    const auto scaled = linear_path(n, 3.0);
    const double p = 1.5;
    const double shift = -p * std::log(3.0) / std::log(static_cast<double>(n));
    CHECK(scale_stat(scaled, p) ==
          doctest::Approx(scale_stat(base, p) + shift).epsilon(1e-12));
}

TEST_CASE("scale statistic guards") {
    auto short_path = make_path({0.0, 1.0, 2.0}, 4); // t_max = 0.5
    CHECK_THROWS_AS(scale_stat(short_path, 1.0), InsufficientWindow);
    auto flat = linear_path(64, 0.0);
    CHECK_THROWS_AS(scale_stat(flat, 1.0), ZeroVariation);
}

TEST_CASE("model scale limit branches at the activity index") {
    CHECK(scale_limit(0.2, 1.5, 2.0) == doctest::Approx(0.4));
    CHECK(scale_limit(0.2, 1.5, 1.0) == doctest::Approx(0.2 + 1.0 / 1.5 - 1.0));
    CHECK(scale_limit(0.2, 1.5, 1.5) == doctest::Approx(0.3)); // p = beta: jump branch
    CHECK_THROWS_AS(scale_limit(0.2, 2.5, 1.0), ConfigInvalid);
}

TEST_CASE("grid fit recovers a two scale synthetic path") {
    const double alpha = 0.2, beta = 1.5;
    const auto path = two_scale_path(1 << 14, alpha, beta);
    const auto rep = fit_alpha_beta(path, default_p_grid());
    CHECK(std::fabs(rep.alpha_hat - alpha) <= 0.03);
    CHECK(std::fabs(rep.beta_hat - beta) <= 0.08);
    CHECK(rep.h_hat == doctest::Approx(rep.alpha_hat + 1.0 / rep.beta_hat).epsilon(1e-12));
    REQUIRE(rep.observed.size() == rep.p_points.size());
    REQUIRE(rep.fitted.size() == rep.p_points.size());
    // the reported objective is the weighted residual at the reported minimizer
    double obj = 0.0;
    for (std::size_t j = 0; j < rep.p_points.size(); ++j) {
        double w;
        if (j == 0)
            w = 0.5 * (rep.p_points[1] - rep.p_points[0]);
        else if (j + 1 == rep.p_points.size())
            w = 0.5 * (rep.p_points[j] - rep.p_points[j - 1]);
        else
            w = 0.5 * (rep.p_points[j + 1] - rep.p_points[j - 1]);
        const double r = rep.observed[j] - rep.fitted[j];
        obj += w * r * r;
    }
    CHECK(rep.objective == doctest::Approx(obj).epsilon(1e-12));
}

TEST_CASE("fit input validation") {
    const auto path = linear_path(64, 1.0);
    CHECK_THROWS_AS(fit_alpha_beta(path, {1.0}), ConfigInvalid);
    CHECK_THROWS_AS(fit_alpha_beta(path, {1.0, 1.0}), ConfigInvalid);
}

TEST_CASE("lag ratio on a linear path is exact") {
    const long n = 256;
    const auto path = linear_path(n, 2.0);
    const double p = 0.5;
    // lag-2 increments: n-1 of size 2/n; lag-1: n of size 1/n (slope 2 cancels)
    const double want = std::pow(2.0, p) * (n - 1.0) / n;
    CHECK(ratio_stat(path, p) == doctest::Approx(want).epsilon(1e-13));
    CHECK(estimate_H(path, p) == doctest::Approx(std::log2(want) / p).epsilon(1e-13));
}

TEST_CASE("lag ratio guards") {
    CHECK_THROWS_AS(ratio_stat(make_path({0.0, 1.0}, 2), 1.0), TooShort);
    CHECK_THROWS_AS(ratio_stat(make_path({1.0, 1.0, 1.0, 1.0}, 3), 1.0), ZeroDenominator);
}

TEST_CASE("relative intermittency of a homogeneous path grows linearly") {
    const long n = 128;
    const auto path = linear_path(n, 1.0);
    CHECK(relative_intermittency(path, 2.0, 1, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(relative_intermittency(path, 2.0, 1, 0.25) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(relative_intermittency(path, 2.0, 1, 1.0) == 1.0);
    CHECK_THROWS_AS(relative_intermittency(path, 2.0, 1, 0.0), ConfigInvalid);
    CHECK_THROWS_AS(relative_intermittency(path, 2.0, 1, 1.5), ConfigInvalid);
}

TEST_CASE("relative intermittency concentrates where the path moves") {
    // flat until t = 0.5, then linear: all variation in the second half
    const long n = 128;
    std::vector<double> v(n + 1, 0.0);
    for (long i = n / 2; i <= n; ++i) v[i] = static_cast<double>(i - n / 2) / n;
    const auto path = make_path(std::move(v), n);
    CHECK(relative_intermittency(path, 2.0, 1, 0.5) == doctest::Approx(0.0));
    CHECK(relative_intermittency(path, 2.0, 1, 0.75) == doctest::Approx(0.5).epsilon(1e-12));
}

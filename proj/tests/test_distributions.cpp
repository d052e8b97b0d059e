#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "mgwi/distributions.hpp"
#include "mgwi/rng.hpp"
#include "test_support.hpp"

using namespace mgwi;
using doctest::Approx;

TEST_CASE("geometric pmf values") {
    CHECK(geo_pmf(GeoParams(1.0), 0) == Approx(0.5).epsilon(1e-15));
    CHECK(geo_pmf(GeoParams(1.0), 2) == Approx(0.125).epsilon(1e-15));
    CHECK(geo_pmf(GeoParams(2.0), 1) == Approx(2.0 / 9.0).epsilon(1e-15));
    CHECK(geo_pmf(GeoParams(1.0), -1) == 0.0);
    CHECK(geo_survival(GeoParams(1.0), 2) == Approx(0.25));
}

TEST_CASE("geometric pgf values and domain") {
    CHECK(geo_pgf(GeoParams(1.0), 1.0) == Approx(1.0));
    CHECK(geo_pgf(GeoParams(1.0), 0.0) == Approx(0.5));
    CHECK(geo_pgf(GeoParams(2.0), 0.5) == Approx(0.5));
    CHECK_THROWS_AS((void)geo_pgf(GeoParams(1.0), 2.0), std::domain_error);
    CHECK_THROWS_AS((void)geo_pgf(GeoParams(1.0), -2.5), std::domain_error);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(GeoParams(0.0), std::invalid_argument);
    CHECK_THROWS_AS(GeoParams(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(ZmgParams(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ZmgParams(1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(ZmgParams(-0.5, 2.0), std::invalid_argument);  // pi must exceed -1/mu
    CHECK_NOTHROW(ZmgParams(-0.49, 2.0));
}

TEST_CASE("zmg pmf values") {
    CHECK(zmg_pmf(ZmgParams(0.0, 2.0), 1) == Approx(2.0 / 9.0).epsilon(1e-15));
    CHECK(zmg_pmf(ZmgParams(0.25, 2.0), 0) == Approx(0.5).epsilon(1e-15));
    CHECK(zmg_pmf(ZmgParams(-0.2, 2.0), 0) == Approx(0.2).epsilon(1e-14));
}

TEST_CASE("zmg pgf values") {
    CHECK(zmg_pgf(ZmgParams(0.25, 2.0), 0.0) == Approx(0.5));
    CHECK(zmg_pgf(ZmgParams(0.0, 2.0), 0.5) == Approx(0.5));
    for (double pi : {-0.3, 0.0, 0.4, 0.9}) CHECK(zmg_pgf(ZmgParams(pi, 2.0), 1.0) == Approx(1.0));
    CHECK_THROWS_AS((void)zmg_pgf(ZmgParams(0.1, 2.0), 1.5), std::domain_error);
}

TEST_CASE("zmg partial sums plus tail equal one") {
    for (double mu : {0.3, 1.0, 2.0, 20.0}) {
        for (double pi : {-0.9 / mu, -0.1, 0.0, 0.5, 0.95}) {
            if (pi <= -1.0 / mu) continue;
            const ZmgParams p(pi, mu);
            double sum = 0.0;
            for (Count k = 0; k <= 60; ++k) {
                sum += zmg_pmf(p, k);
                CHECK(sum + zmg_tail(p, k) == Approx(1.0).epsilon(1e-12));
                CHECK(zmg_cdf(p, k) == Approx(sum).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("zmg pgf with pi zero is the geometric pgf") {
    for (double s = -1.0; s <= 1.0; s += 0.05) {
        CHECK(std::abs(zmg_pgf(ZmgParams(0.0, 2.0), s) - geo_pgf(GeoParams(2.0), s)) < 1e-12);
    }
}

TEST_CASE("pgf derivative at one equals the mean") {
    const ZmgParams p(0.3, 1.7);
    const double h = 1e-6;
    const double d = (zmg_pgf(p, 1.0 + h) - zmg_pgf(p, 1.0 - h)) / (2.0 * h);
    CHECK(std::abs(d - zmg_moments(p).mean) < 1e-6);
}

TEST_CASE("zmg moments") {
    const Moments g = zmg_moments(ZmgParams(0.0, 2.0));
    CHECK(g.mean == Approx(2.0));
    CHECK(g.variance == Approx(6.0));
    const double mu = 2.0;
    const double alpha = 1.0;
    const Moments e = zmg_moments(ZmgParams(alpha / (1.0 + mu + alpha), mu));
    CHECK(e.mean == Approx(1.5));
    CHECK(e.variance == Approx(5.25));
    const double sigma2 = mu * (1 + mu) / (1 + mu + alpha) * (1 + mu * (1 + mu + 2 * alpha) / (1 + mu + alpha));
    CHECK(e.variance == Approx(sigma2).epsilon(1e-14));
}

TEST_CASE("higher innovation moments match truncated summation") {
    for (auto [mu, alpha] : {std::pair{2.0, 1.0}, std::pair{0.5, 1.5}, std::pair{1.2, 0.5}, std::pair{3.0, 4.0}}) {
        const ZmgParams eps(alpha / (1.0 + mu + alpha), mu);
        const double mu_eps = mu * (1.0 + mu) / (1.0 + mu + alpha);
        double m[5] = {0, 0, 0, 0, 0};
        for (Count k = 0; k < 4000; ++k) {
            const double p = zmg_pmf(eps, k);
            const double x = static_cast<double>(k);
            for (int r = 1; r <= 4; ++r) m[r] += p * std::pow(x, r);
        }
        for (int r = 1; r <= 4; ++r) CHECK(zmg_raw_moment(eps, r) == Approx(m[r]).epsilon(1e-8));
        CHECK(m[3] == Approx(mu_eps * (6 * mu * mu + 6 * mu + 1)).epsilon(1e-8));
        CHECK(m[4] == Approx(mu_eps * (24 * mu * mu * mu + 36 * mu * mu + 14 * mu + 1)).epsilon(1e-8));
        CHECK(zmg_factorial_moment(eps, 2) == Approx(m[2] - m[1]).epsilon(1e-8));
    }
}

TEST_CASE("large k uses log space without underflow to nan") {
    const ZmgParams p(0.2, 50.0);
    const double v = zmg_pmf(p, 2000);
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);
    CHECK(std::log(v) == Approx(zmg_log_pmf(p, 2000)).epsilon(1e-12));
    CHECK(geo_log_pmf(GeoParams(0.1), 10000) < -20000.0);
}

TEST_CASE("zmg sampler matches the pmf") {
    Rng rng(2024);
    const ZmgParams p(0.25, 2.0);
    const std::size_t n = 1000000;
    std::vector<Count> draws(n);
    for (auto& d : draws) d = zmg_sample(p, rng);
    const auto f = testing::frequencies(draws, 12);
    for (Count k = 0; k < 12; ++k) {
        CHECK(testing::within_binomial_se(f[static_cast<std::size_t>(k)], zmg_pmf(p, k), n));
    }
}

TEST_CASE("zero-deflated sampler matches the pmf") {
    Rng rng(5);
    const ZmgParams p(-0.4, 2.0);
    const std::size_t n = 400000;
    std::vector<Count> draws(n);
    for (auto& d : draws) d = zmg_sample(p, rng);
    const auto f = testing::frequencies(draws, 10);
    for (Count k = 0; k < 10; ++k) {
        CHECK(testing::within_binomial_se(f[static_cast<std::size_t>(k)], zmg_pmf(p, k), n));
    }
}

TEST_CASE("geometric sample mean") {
    Rng rng(99);
    double s = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) s += static_cast<double>(zmg_sample(ZmgParams::geometric(2.0), rng));
    CHECK(std::abs(s / n - 2.0) < 0.01);
}

TEST_CASE("zeros dominate as pi approaches one") {
    Rng rng(3);
    const ZmgParams p(1.0 - 1e-6, 2.0);
    int zeros = 0;
    for (int i = 0; i < 10000; ++i) zeros += zmg_sample(p, rng) == 0;
    CHECK(zeros >= 9995);
}

TEST_CASE("poisson and binomial pieces") {
    CHECK(poisson_pmf(2.0, 0) == Approx(std::exp(-2.0)));
    CHECK(poisson_pmf(2.0, 3) == Approx(std::exp(-2.0) * 8.0 / 6.0));
    CHECK(poisson_pmf(0.0, 0) == 1.0);
    CHECK(poisson_pmf(0.0, 2) == 0.0);
    CHECK(binomial_pmf(4, 0.5, 2) == Approx(6.0 / 16.0));
    CHECK(binomial_pmf(4, 0.0, 0) == 1.0);
    CHECK(binomial_pmf(4, 1.0, 4) == 1.0);
    Rng rng(11);
    double s = 0.0;
    for (int i = 0; i < 100000; ++i) s += static_cast<double>(binomial_sample(10, 0.3, rng));
    CHECK(std::abs(s / 100000 - 3.0) < 0.03);
}

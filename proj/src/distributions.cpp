#include "mgwi/distributions.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace mgwi {

namespace {

// Beyond this exponent pmf values are formed in log space.
constexpr Count kDirectPowLimit = 500;

// k * log(r) for r = a / (1 + a), stable for small and large a.
double log_ratio(double a) { return -std::log1p(1.0 / a); }

}  // namespace

GeoParams::GeoParams(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("geometric parameter alpha must be positive and finite, got " +
                                    std::to_string(alpha));
    }
}

ZmgParams::ZmgParams(double pi, double mu) : pi_(pi), mu_(mu) {
    if (!(mu > 0.0) || !std::isfinite(mu)) {
        throw std::invalid_argument("ZMG parameter mu must be positive and finite, got " +
                                    std::to_string(mu));
    }
    if (!(pi < 1.0) || !(pi > -1.0 / mu)) {
        throw std::invalid_argument("ZMG parameter pi must lie in (-1/mu, 1), got pi=" +
                                    std::to_string(pi) + " mu=" + std::to_string(mu));
    }
    if (pi + (1.0 - pi) / (1.0 + mu) < 0.0) {
        throw std::invalid_argument("ZMG mass at zero is negative");
    }
}

double geo_pmf(const GeoParams& p, Count k) noexcept {
    if (k < 0) return 0.0;
    if (k > kDirectPowLimit) return std::exp(geo_log_pmf(p, k));
    return std::pow(p.ratio(), static_cast<double>(k)) / (1.0 + p.alpha());
}

double geo_log_pmf(const GeoParams& p, Count k) noexcept {
    if (k < 0) return -std::numeric_limits<double>::infinity();
    return static_cast<double>(k) * log_ratio(p.alpha()) - std::log1p(p.alpha());
}

double geo_survival(const GeoParams& p, Count k) noexcept {
    if (k <= 0) return 1.0;
    if (k > kDirectPowLimit) return std::exp(static_cast<double>(k) * log_ratio(p.alpha()));
    return std::pow(p.ratio(), static_cast<double>(k));
}

double geo_pgf(const GeoParams& p, double s) {
    if (!(std::abs(s) < 1.0 + 1.0 / p.alpha())) {
        throw std::domain_error("geo_pgf: |s| must be below 1 + 1/alpha");
    }
    return 1.0 / (1.0 + p.alpha() * (1.0 - s));
}

Count geo_sample(const GeoParams& p, Rng& rng) {
    return zmg_sample(ZmgParams::geometric(p.alpha()), rng);
}

double zmg_pmf(const ZmgParams& p, Count k) noexcept {
    if (k < 0) return 0.0;
    const double mu = p.mu();
    if (k == 0) return p.pi() + (1.0 - p.pi()) / (1.0 + mu);
    if (k > kDirectPowLimit) return std::exp(zmg_log_pmf(p, k));
    return (1.0 - p.pi()) * std::pow(p.ratio(), static_cast<double>(k)) / (1.0 + mu);
}

double zmg_log_pmf(const ZmgParams& p, Count k) noexcept {
    if (k < 0) return -std::numeric_limits<double>::infinity();
    if (k == 0) return std::log(zmg_pmf(p, 0));
    return std::log1p(-p.pi()) + static_cast<double>(k) * log_ratio(p.mu()) - std::log1p(p.mu());
}

double zmg_tail(const ZmgParams& p, Count k) noexcept {
    if (k < 0) return 1.0;
    const double e = static_cast<double>(k + 1);
    if (k + 1 > kDirectPowLimit) return (1.0 - p.pi()) * std::exp(e * log_ratio(p.mu()));
    return (1.0 - p.pi()) * std::pow(p.ratio(), e);
}

double zmg_cdf(const ZmgParams& p, Count k) noexcept {
    if (k < 0) return 0.0;
    return 1.0 - zmg_tail(p, k);
}

double zmg_pgf(const ZmgParams& p, double s) {
    if (!(std::abs(s) < 1.0 + 1.0 / p.mu())) {
        throw std::domain_error("zmg_pgf: |s| must be below 1 + 1/mu");
    }
    const double d = p.mu() * (1.0 - s);
    return (1.0 + p.pi() * d) / (1.0 + d);
}

Count zmg_sample(const ZmgParams& p, Rng& rng) {
    // Smallest k with P(Y > k) < V, V uniform on (0, 1].
    const double v = rng.open_uniform();
    const double scaled = v / (1.0 - p.pi());
    if (scaled >= p.ratio()) return 0;
    const double level = std::log(scaled) / log_ratio(p.mu());
    return static_cast<Count>(std::floor(level));
}

Moments zmg_moments(const ZmgParams& p) noexcept {
    const double q = 1.0 - p.pi();
    const double mu = p.mu();
    return {q * mu, q * mu * (1.0 + mu + p.pi() * mu)};
}

double zmg_factorial_moment(const ZmgParams& p, int order) {
    if (order < 0) throw std::invalid_argument("zmg_factorial_moment: negative order");
    if (order == 0) return 1.0;
    double f = 1.0;
    for (int j = 2; j <= order; ++j) f *= j;
    return (1.0 - p.pi()) * f * std::pow(p.mu(), order);
}

double zmg_raw_moment(const ZmgParams& p, int order) {
    // Stirling numbers of the second kind map factorial to raw moments.
    static constexpr double kStirling[5][5] = {
        {1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 1, 1, 0, 0}, {0, 1, 3, 1, 0}, {0, 1, 7, 6, 1}};
    if (order < 1 || order > 4) throw std::invalid_argument("zmg_raw_moment: order must be 1..4");
    double m = 0.0;
    for (int j = 1; j <= order; ++j) m += kStirling[order][j] * zmg_factorial_moment(p, j);
    return m;
}

double poisson_log_pmf(double lambda, Count k) noexcept {
    if (k < 0) return -std::numeric_limits<double>::infinity();
    if (lambda == 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    const double kd = static_cast<double>(k);
    return kd * std::log(lambda) - lambda - std::lgamma(kd + 1.0);
}

double poisson_pmf(double lambda, Count k) noexcept { return std::exp(poisson_log_pmf(lambda, k)); }

Count poisson_sample(double lambda, Rng& rng) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("poisson_sample: negative mean");
    if (lambda == 0.0) return 0;
    std::poisson_distribution<Count> d(lambda);
    return d(rng.engine());
}

double binomial_pmf(Count trials, double p, Count k) noexcept {
    if (k < 0 || k > trials) return 0.0;
    if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
    if (p >= 1.0) return k == trials ? 1.0 : 0.0;
    const double n = static_cast<double>(trials);
    const double kd = static_cast<double>(k);
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(n - kd + 1.0) +
                    kd * std::log(p) + (n - kd) * std::log1p(-p));
}

Count binomial_sample(Count trials, double p, Rng& rng) {
    if (trials <= 0 || p <= 0.0) return 0;
    if (p >= 1.0) return trials;
    std::binomial_distribution<Count> d(trials, p);
    return d(rng.engine());
}

}  // namespace mgwi

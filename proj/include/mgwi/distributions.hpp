#pragma once

#include <cstdint>

#include "mgwi/rng.hpp"

namespace mgwi {

/// Nonnegative count. Signed so that differences such as y - k stay well defined.
using Count = std::int64_t;

/**
 * Geometric law on {0, 1, ...} with mean alpha:
 * P(Z = k) = alpha^k / (1 + alpha)^(k+1).
 */
class GeoParams {
public:
    explicit GeoParams(double alpha);

    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    /// alpha / (1 + alpha), the common ratio P(Z >= k+1) / P(Z >= k).
    [[nodiscard]] double ratio() const noexcept { return alpha_ / (1.0 + alpha_); }

private:
    double alpha_;
};

/**
 * Zero-modified geometric law ZMG(pi, mu): a Geo(mu) whose mass at zero is
 * inflated (pi > 0) or deflated (pi < 0). Requires mu > 0 and pi in (-1/mu, 1).
 */
class ZmgParams {
public:
    ZmgParams(double pi, double mu);

    [[nodiscard]] static ZmgParams geometric(double mu) { return ZmgParams(0.0, mu); }

    [[nodiscard]] double pi() const noexcept { return pi_; }
    [[nodiscard]] double mu() const noexcept { return mu_; }
    /// mu / (1 + mu).
    [[nodiscard]] double ratio() const noexcept { return mu_ / (1.0 + mu_); }

private:
    double pi_;
    double mu_;
};

struct Moments {
    double mean;
    double variance;
};

// Geometric. Negative k has probability zero.
[[nodiscard]] double geo_pmf(const GeoParams& p, Count k) noexcept;
[[nodiscard]] double geo_log_pmf(const GeoParams& p, Count k) noexcept;
/// P(Z >= k).
[[nodiscard]] double geo_survival(const GeoParams& p, Count k) noexcept;
/// Throws std::domain_error when |s| >= 1 + 1/alpha.
[[nodiscard]] double geo_pgf(const GeoParams& p, double s);
[[nodiscard]] Count geo_sample(const GeoParams& p, Rng& rng);

// Zero-modified geometric.
[[nodiscard]] double zmg_pmf(const ZmgParams& p, Count k) noexcept;
[[nodiscard]] double zmg_log_pmf(const ZmgParams& p, Count k) noexcept;
/// P(Y <= k); zero for k < 0.
[[nodiscard]] double zmg_cdf(const ZmgParams& p, Count k) noexcept;
/// P(Y > k) = (1 - pi) (mu / (1 + mu))^(k+1) for k >= 0.
[[nodiscard]] double zmg_tail(const ZmgParams& p, Count k) noexcept;
/// Throws std::domain_error when |s| >= 1 + 1/mu.
[[nodiscard]] double zmg_pgf(const ZmgParams& p, double s);
/// Exact inverse-cdf draw. Valid over the whole admissible pi range.
[[nodiscard]] Count zmg_sample(const ZmgParams& p, Rng& rng);
[[nodiscard]] Moments zmg_moments(const ZmgParams& p) noexcept;
/// E[Y (Y-1) ... (Y-order+1)] = (1 - pi) order! mu^order.
[[nodiscard]] double zmg_factorial_moment(const ZmgParams& p, int order);
/// Raw moment E[Y^order] for order in 1..4.
[[nodiscard]] double zmg_raw_moment(const ZmgParams& p, int order);

// Poisson and binomial pieces for the linear INAR(1) baseline.
[[nodiscard]] double poisson_pmf(double lambda, Count k) noexcept;
[[nodiscard]] double poisson_log_pmf(double lambda, Count k) noexcept;
[[nodiscard]] Count poisson_sample(double lambda, Rng& rng);
[[nodiscard]] double binomial_pmf(Count trials, double p, Count k) noexcept;
[[nodiscard]] Count binomial_sample(Count trials, double p, Rng& rng);

}  // namespace mgwi

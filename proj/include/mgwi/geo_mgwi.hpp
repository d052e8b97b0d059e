#pragma once

#include "mgwi/count_series.hpp"
#include "mgwi/distributions.hpp"
#include "mgwi/rng.hpp"

namespace mgwi {

/**
 * One step of an MGWI recursion X_t = min(X_{t-1}, Z_t) + eps_t with
 * Z_t ~ Geo(alpha) and eps_t ~ ZMG(innovation). Time-varying models build
 * one of these per time index.
 */
struct MgwiStep {
    double alpha;
    ZmgParams innovation;

    /// The step whose innovation keeps a Geo(mu) marginal: eps ~ ZMG(alpha/(1+mu+alpha), mu).
    [[nodiscard]] static MgwiStep geometric_marginal(double mu, double alpha);
};

/// P(X_t = y | X_{t-1} = x).
[[nodiscard]] double transition_prob(const MgwiStep& step, Count x, Count y);
/// log P(X_t = y | X_{t-1} = x), evaluated in log space when the direct sum underflows.
[[nodiscard]] double log_transition_prob(const MgwiStep& step, Count x, Count y);
/// P(X_t <= y | X_{t-1} = x); zero for y < 0.
[[nodiscard]] double transition_cdf(const MgwiStep& step, Count x, Count y);
[[nodiscard]] double cond_mean(const MgwiStep& step, Count x_prev);
[[nodiscard]] double cond_var(const MgwiStep& step, Count x_prev);
[[nodiscard]] Count step_sample(const MgwiStep& step, Count x_prev, Rng& rng);

/// Stationary Geo-MGWI process: Geo(mu) marginals, geometric thinning with mean alpha.
class GeoMgwiModel {
public:
    GeoMgwiModel(double mu, double alpha);

    [[nodiscard]] double mu() const noexcept { return mu_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    /// alpha / (1 + alpha).
    [[nodiscard]] double alpha_star() const noexcept { return alpha_ / (1.0 + alpha_); }
    [[nodiscard]] ZmgParams innovation() const { return step_.innovation; }
    [[nodiscard]] ZmgParams marginal() const { return ZmgParams::geometric(mu_); }
    [[nodiscard]] const MgwiStep& step() const noexcept { return step_; }
    [[nodiscard]] double innovation_mean() const noexcept;
    [[nodiscard]] double innovation_variance() const noexcept;

private:
    double mu_;
    double alpha_;
    MgwiStep step_;
};

/// X_1 ~ Geo(mu), then the stationary recursion; n >= 1.
[[nodiscard]] CountSeries simulate(const GeoMgwiModel& m, std::size_t n, Rng& rng);

[[nodiscard]] double transition_prob(const GeoMgwiModel& m, Count x, Count y);
[[nodiscard]] double cond_mean(const GeoMgwiModel& m, Count x_prev);
[[nodiscard]] double cond_var(const GeoMgwiModel& m, Count x_prev);

/// E(s1^{X_t} s2^{X_{t-1}}). Throws std::domain_error outside the convergence region.
[[nodiscard]] double joint_pgf(const GeoMgwiModel& m, double s1, double s2);

/// H_k(x) = intercept + slope * x, the composition f_2(f_3(...f_k(x))).
struct AffineMap {
    double intercept;
    double slope;

    [[nodiscard]] double operator()(double x) const noexcept { return intercept + slope * x; }
};

/// The affine form of H_k for k >= 2; the identity for k = 1.
[[nodiscard]] AffineMap lag_affine_map(const GeoMgwiModel& m, int k);

/// E(X_t | X_{t-k} = x_past), k >= 1.
[[nodiscard]] double cond_mean_k(const GeoMgwiModel& m, Count x_past, int k);

/// Cov(X_t, X_{t-k}), k >= 1.
[[nodiscard]] double autocov(const GeoMgwiModel& m, int k);
/// autocov(k) / Var(X).
[[nodiscard]] double autocorr(const GeoMgwiModel& m, int k);

/// E[X s^X] for X ~ Geo(mu).
[[nodiscard]] double geometric_weighted_mean(double mu, double s) noexcept;

}  // namespace mgwi

#pragma once

#include <array>
#include <optional>

#include "mgwi/count_series.hpp"
#include "mgwi/fit_result.hpp"
#include "mgwi/optimize.hpp"
#include "mgwi/rng.hpp"

namespace mgwi {

struct FitOptions {
    OptimOptions optim;
    /// Starting point in natural parameters; the moment start is used when empty.
    std::optional<Eigen::VectorXd> init;
    /// Include log P(X_1 = x_1) in the likelihood.
    bool full_likelihood = true;
    /// Hessian-based standard errors for MLE fits.
    bool compute_se = true;
};

/// Sum over t >= 2 of squared one-step prediction errors.
[[nodiscard]] double cls_objective(const CountSeries& series, double mu, double alpha);
/// (dQ/dmu, dQ/dalpha).
[[nodiscard]] std::array<double, 2> cls_gradient(const CountSeries& series, double mu, double alpha);

/// Log-likelihood including the Geo(mu) term for x_1.
[[nodiscard]] double loglik(const CountSeries& series, double mu, double alpha);
/// Log-likelihood conditional on x_1.
[[nodiscard]] double conditional_loglik(const CountSeries& series, double mu, double alpha);

/// Lag-1 sample autocorrelation with divisor n; 0 for a constant series.
[[nodiscard]] double sample_lag1_autocorrelation(const CountSeries& series);

/// (mu0, alpha0): sample mean, and alpha solving rho(1) = alpha(1+alpha)/(1+mu+alpha)^2
/// for the sample lag-1 autocorrelation (1 when that has no positive root).
[[nodiscard]] std::array<double, 2> moment_start(const CountSeries& series);

/// Estimates are named "mu" and "alpha". Throws std::invalid_argument when
/// the series has fewer than two observations.
[[nodiscard]] FitResult fit_cls(const CountSeries& series, const FitOptions& opts = {});
[[nodiscard]] FitResult fit_mle(const CountSeries& series, const FitOptions& opts = {});
[[nodiscard]] FitResult fit_stationary(const CountSeries& series, Method method,
                                       const FitOptions& opts = {});

enum class BootstrapModel { GeoMgwi, PoissonInnovationMgwi };

/**
 * Parametric bootstrap: B series of the observed length are simulated from
 * the fitted model, starting at the observed x_1, and refitted by the same
 * method. Replication b uses rng.child(b). Throws std::runtime_error when more
 * than 20% of the refits fail to converge.
 */
[[nodiscard]] BootstrapResult bootstrap_se(const CountSeries& series, const FitResult& fitted,
                                           BootstrapModel model, int replications, const Rng& rng,
                                           int jobs = 1);

/// Poisson-innovation MGWI path: thinning as in Geo-MGWI, innovations Poisson
/// with mean mu(1+mu)/(1+mu+alpha). Starts at x1.
[[nodiscard]] CountSeries simulate_poisson_innovation(double mu, double alpha, Count x1,
                                                      std::size_t n, Rng& rng);

}  // namespace mgwi

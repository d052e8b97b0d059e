#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "mgwi/count_series.hpp"
#include "mgwi/covariates.hpp"
#include "mgwi/fit_result.hpp"
#include "mgwi/geo_mgwi.hpp"
#include "mgwi/optimize.hpp"
#include "mgwi/rng.hpp"

namespace mgwi {

enum class RegressionKind { Mgwi, Pinar };

[[nodiscard]] std::string_view to_string(RegressionKind k) noexcept;

/**
 * Time-varying model with mu_t = exp(w_t' beta) and
 * alpha_t = exp(v_t' gamma) (MGWI) or logistic(v_t' gamma) (PINAR).
 * Row i of W and V holds the covariates at time t = i + 1.
 */
class RegressionModel {
public:
    /// Throws std::invalid_argument on a dimension mismatch.
    RegressionModel(RegressionKind kind, Eigen::MatrixXd W, Eigen::MatrixXd V,
                    Eigen::VectorXd beta, Eigen::VectorXd gamma);
    /// Coefficients set to zero.
    RegressionModel(RegressionKind kind, Eigen::MatrixXd W, Eigen::MatrixXd V);

    [[nodiscard]] RegressionKind kind() const noexcept { return kind_; }
    [[nodiscard]] const Eigen::MatrixXd& W() const noexcept { return W_; }
    [[nodiscard]] const Eigen::MatrixXd& V() const noexcept { return V_; }
    [[nodiscard]] const Eigen::VectorXd& beta() const noexcept { return beta_; }
    [[nodiscard]] const Eigen::VectorXd& gamma() const noexcept { return gamma_; }
    [[nodiscard]] std::size_t length() const noexcept { return static_cast<std::size_t>(W_.rows()); }

    [[nodiscard]] double mu(std::size_t i) const;
    [[nodiscard]] double alpha(std::size_t i) const;
    /// MGWI step at row i; Geo(mu_i) marginal.
    [[nodiscard]] MgwiStep step(std::size_t i) const;

    /// (beta, gamma) stacked.
    [[nodiscard]] Eigen::VectorXd coefficients() const;
    [[nodiscard]] RegressionModel with_coefficients(const Eigen::VectorXd& theta) const;
    /// beta0.. then gamma0..
    [[nodiscard]] std::vector<std::string> coefficient_names() const;
    /// One message per design matrix without full column rank.
    [[nodiscard]] std::vector<std::string> rank_warnings() const;
    /// Same coefficients, first n rows of the covariates.
    [[nodiscard]] RegressionModel truncated(std::size_t n) const;

private:
    RegressionKind kind_;
    Eigen::MatrixXd W_;
    Eigen::MatrixXd V_;
    Eigen::VectorXd beta_;
    Eigen::VectorXd gamma_;
};

/// E(X_t | X_{t-1} = x_prev) at row i >= 1.
[[nodiscard]] double nonstat_cond_mean(const RegressionModel& m, Count x_prev, std::size_t i);
/// Var(X_t | X_{t-1} = x_prev) at row i >= 1.
[[nodiscard]] double nonstat_cond_var(const RegressionModel& m, Count x_prev, std::size_t i);
/// P(X_t = y | X_{t-1} = x) at row i >= 1.
[[nodiscard]] double nonstat_transition_prob(const RegressionModel& m, Count x, Count y,
                                             std::size_t i);
/// P(X_t <= y | X_{t-1} = x) at row i >= 1.
[[nodiscard]] double nonstat_transition_cdf(const RegressionModel& m, Count x, Count y,
                                            std::size_t i);

/// MGWI kind: X_1 ~ Geo(mu_1), one observation per covariate row.
[[nodiscard]] CountSeries simulate_nonstat(const RegressionModel& m, Rng& rng);
/// PINAR kind: binomial thinning with alpha_t plus Poisson(mu_t (1 - alpha_t)).
/// X_1 ~ Poisson(mu_1).
[[nodiscard]] CountSeries simulate_pinar(const RegressionModel& m, Rng& rng);

struct RegressionFitOptions {
    OptimOptions optim;
    /// Starting coefficients; intercepts from the stationary moment start otherwise.
    std::optional<Eigen::VectorXd> init;
    bool compute_se = true;
    /// Central-difference step on the coefficient scale.
    double gradient_step = 1e-6;
};

/// Sum over t >= 2 of squared one-step prediction errors at the model's coefficients.
[[nodiscard]] double nonstat_sspe(const RegressionModel& m, const CountSeries& series);
/// MGWI log-likelihood including log Geo(mu_1) at x_1.
[[nodiscard]] double nonstat_loglik(const RegressionModel& m, const CountSeries& series);

/// Starting coefficients: intercept columns from the stationary moment start, others 0.
[[nodiscard]] Eigen::VectorXd regression_start(const RegressionModel& skeleton,
                                               const CountSeries& series);

/// CLS or MLE over (beta, gamma) for the MGWI kind.
[[nodiscard]] FitResult fit_nonstat(const CountSeries& series, const RegressionModel& skeleton,
                                    Method method, const RegressionFitOptions& opts = {});
/// CLS over (beta, gamma) for the PINAR kind.
[[nodiscard]] FitResult fit_pinar_cls(const CountSeries& series, const RegressionModel& skeleton,
                                      const RegressionFitOptions& opts = {});

enum class RegressionBootstrap { GeoInnovMgwi, PoissonInnovMgwi, Pinar };

/// Parametric bootstrap from the fitted model, each path starting at the observed x_1.
/// Replication b uses rng.child(b).
[[nodiscard]] BootstrapResult bootstrap_se_nonstat(const CountSeries& series,
                                                   const RegressionModel& fitted,
                                                   Method method, RegressionBootstrap generative,
                                                   int replications, const Rng& rng,
                                                   int jobs = 1);

}  // namespace mgwi

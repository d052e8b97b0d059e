#include "mgwi/regression.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include <gsl/gsl_cdf.h>

#include "mgwi/distributions.hpp"
#include "mgwi/estimation.hpp"
#include "mgwi/parallel.hpp"
#include "mgwi/thinning.hpp"

namespace mgwi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

Eigen::Index row(std::size_t i) { return static_cast<Eigen::Index>(i); }

void check_row(const RegressionModel& m, std::size_t i) {
    if (i >= m.length()) {
        throw std::out_of_range("time index " + std::to_string(i + 1) +
                                " outside the covariate range 1.." + std::to_string(m.length()));
    }
}

void check_aligned(const RegressionModel& m, const CountSeries& series) {
    if (series.size() != m.length()) {
        throw std::invalid_argument("series has " + std::to_string(series.size()) +
                                    " observations but the covariates have " +
                                    std::to_string(m.length()) + " rows");
    }
}

// Link values for every row; false when some value leaves the valid range.
struct Links {
    Eigen::VectorXd mu;
    Eigen::VectorXd alpha;
    bool valid = true;
};

Links evaluate_links(const RegressionModel& m) {
    Links out;
    out.mu = (m.W() * m.beta()).array().exp();
    const Eigen::ArrayXd eta = (m.V() * m.gamma()).array();
    if (m.kind() == RegressionKind::Mgwi) {
        out.alpha = eta.exp();
        out.valid = out.mu.allFinite() && out.alpha.allFinite() && (out.mu.array() > 0.0).all() &&
                    (out.alpha.array() > 0.0).all();
    } else {
        out.alpha = eta.unaryExpr([](double z) { return logistic(z); });
        out.valid = out.mu.allFinite() && (out.mu.array() > 0.0).all() && out.alpha.allFinite();
    }
    return out;
}

double mgwi_mean(double mu, double alpha, double x_prev) {
    return alpha * (1.0 - std::pow(alpha / (1.0 + alpha), x_prev)) + mu * (1.0 + mu) / (1.0 + mu + alpha);
}

double pinar_mean(double mu, double alpha, double x_prev) {
    return alpha * x_prev + mu * (1.0 - alpha);
}

double pinar_prob(double mu, double alpha, Count x, Count y) {
    if (y < 0) return 0.0;
    const double lambda = mu * (1.0 - alpha);
    double p = 0.0;
    for (Count k = 0; k <= std::min(x, y); ++k) p += binomial_pmf(x, alpha, k) * poisson_pmf(lambda, y - k);
    return p;
}

double pinar_cdf(double mu, double alpha, Count x, Count y) {
    if (y < 0) return 0.0;
    const double lambda = mu * (1.0 - alpha);
    double p = 0.0;
    for (Count k = 0; k <= std::min(x, y); ++k) {
        p += binomial_pmf(x, alpha, k) * gsl_cdf_poisson_P(static_cast<unsigned>(y - k), lambda);
    }
    return std::min(p, 1.0);
}

std::optional<std::size_t> intercept_column(const Eigen::MatrixXd& X) {
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        if ((X.col(j).array() == 1.0).all()) return static_cast<std::size_t>(j);
    }
    return std::nullopt;
}

Eigen::VectorXd optional_hessian_se(const Objective& nll, const Eigen::VectorXd& theta,
                                    std::vector<std::string>& diagnostics) {
    const Eigen::MatrixXd h = numeric_hessian(nll, theta, 1e-4);
    const Eigen::LLT<Eigen::MatrixXd> llt(h);
    if (llt.info() != Eigen::Success) {
        diagnostics.push_back("Hessian not positive definite: standard errors unavailable");
        return {};
    }
    const Eigen::MatrixXd cov = llt.solve(Eigen::MatrixXd::Identity(h.rows(), h.cols()));
    return cov.diagonal().array().sqrt();
}

FitResult run_fit(const CountSeries& series, const RegressionModel& skeleton, Method method,
                  const Objective& objective, const RegressionFitOptions& opts) {
    if (series.size() < 2) throw std::invalid_argument("regression fit: series needs at least 2 observations");
    check_aligned(skeleton, series);
    const Eigen::VectorXd start = opts.init ? *opts.init : regression_start(skeleton, series);
    if (start.size() != skeleton.coefficients().size()) {
        throw std::invalid_argument("initial coefficient vector has the wrong length");
    }
    const double h = opts.gradient_step;
    const GradientFn grad = [&objective, h](const Eigen::VectorXd& x) {
        return numeric_gradient(objective, x, h);
    };
    const OptimResult r = minimize(objective, grad, start, opts.optim);

    FitResult out;
    out.method = method;
    out.names = skeleton.coefficient_names();
    out.estimates = r.x;
    out.converged = r.converged;
    out.iterations = r.iterations;
    out.gradient_norm = r.gradient_norm;
    out.tolerance = r.tolerance;
    out.algorithm = r.algorithm;
    out.diagnostics = skeleton.rank_warnings();
    if (!r.converged) out.diagnostics.push_back("optimizer: " + r.message);
    const RegressionModel fitted = skeleton.with_coefficients(r.x);
    out.sspe = nonstat_sspe(fitted, series);
    out.objective = method == Method::Cls ? r.value : -r.value;
    if (method == Method::Mle && opts.compute_se && r.converged) {
        Eigen::VectorXd se = optional_hessian_se(objective, r.x, out.diagnostics);
        if (se.size() > 0) out.std_errors = se;
    }
    return out;
}

}  // namespace

std::string_view to_string(RegressionKind k) noexcept { return k == RegressionKind::Mgwi ? "mgwi" : "pinar"; }

RegressionModel::RegressionModel(RegressionKind kind, Eigen::MatrixXd W, Eigen::MatrixXd V,
                                 Eigen::VectorXd beta, Eigen::VectorXd gamma)
    : kind_(kind), W_(std::move(W)), V_(std::move(V)), beta_(std::move(beta)), gamma_(std::move(gamma)) {
    if (W_.rows() == 0 || W_.cols() == 0 || V_.cols() == 0) {
        throw std::invalid_argument("covariate matrices must be nonempty");
    }
    if (W_.rows() != V_.rows()) {
        throw std::invalid_argument("W has " + std::to_string(W_.rows()) + " rows but V has " +
                                    std::to_string(V_.rows()));
    }
    if (beta_.size() != W_.cols()) {
        throw std::invalid_argument("beta has length " + std::to_string(beta_.size()) +
                                    " but W has " + std::to_string(W_.cols()) + " columns");
    }
    if (gamma_.size() != V_.cols()) {
        throw std::invalid_argument("gamma has length " + std::to_string(gamma_.size()) +
                                    " but V has " + std::to_string(V_.cols()) + " columns");
    }
    if (!W_.allFinite() || !V_.allFinite()) throw std::invalid_argument("covariates must be finite");
}

RegressionModel::RegressionModel(RegressionKind kind, Eigen::MatrixXd W, Eigen::MatrixXd V)
    : RegressionModel(kind, W, V, Eigen::VectorXd::Zero(W.cols()), Eigen::VectorXd::Zero(V.cols())) {}

double RegressionModel::mu(std::size_t i) const {
    check_row(*this, i);
    return std::exp(W_.row(row(i)).dot(beta_));
}

double RegressionModel::alpha(std::size_t i) const {
    check_row(*this, i);
    const double eta = V_.row(row(i)).dot(gamma_);
    return kind_ == RegressionKind::Mgwi ? std::exp(eta) : logistic(eta);
}

MgwiStep RegressionModel::step(std::size_t i) const {
    if (kind_ != RegressionKind::Mgwi) throw std::logic_error("step() requires the MGWI kind");
    return MgwiStep::geometric_marginal(mu(i), alpha(i));
}

Eigen::VectorXd RegressionModel::coefficients() const {
    Eigen::VectorXd theta(beta_.size() + gamma_.size());
    theta << beta_, gamma_;
    return theta;
}

RegressionModel RegressionModel::with_coefficients(const Eigen::VectorXd& theta) const {
    if (theta.size() != beta_.size() + gamma_.size()) {
        throw std::invalid_argument("coefficient vector has the wrong length");
    }
    return RegressionModel(kind_, W_, V_, theta.head(beta_.size()), theta.tail(gamma_.size()));
}

std::vector<std::string> RegressionModel::coefficient_names() const {
    std::vector<std::string> names;
    for (Eigen::Index j = 0; j < beta_.size(); ++j) names.push_back("beta" + std::to_string(j));
    for (Eigen::Index j = 0; j < gamma_.size(); ++j) names.push_back("gamma" + std::to_string(j));
    return names;
}

std::vector<std::string> RegressionModel::rank_warnings() const {
    std::vector<std::string> out;
    auto check = [&out](const Eigen::MatrixXd& X, const char* name) {
        const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
        if (qr.rank() < X.cols()) {
            out.push_back(std::string("covariate matrix ") + name + " has rank " +
                          std::to_string(qr.rank()) + " < " + std::to_string(X.cols()) + " columns");
        }
    };
    check(W_, "W");
    check(V_, "V");
    return out;
}

RegressionModel RegressionModel::truncated(std::size_t n) const {
    if (n == 0 || n > length()) throw std::invalid_argument("truncated: invalid length");
    return RegressionModel(kind_, W_.topRows(row(n)), V_.topRows(row(n)), beta_, gamma_);
}

double nonstat_cond_mean(const RegressionModel& m, Count x_prev, std::size_t i) {
    const double mu = m.mu(i);
    const double alpha = m.alpha(i);
    const double x = static_cast<double>(x_prev);
    return m.kind() == RegressionKind::Mgwi ? mgwi_mean(mu, alpha, x) : pinar_mean(mu, alpha, x);
}

double nonstat_cond_var(const RegressionModel& m, Count x_prev, std::size_t i) {
    if (m.kind() == RegressionKind::Mgwi) return cond_var(m.step(i), x_prev);
    const double alpha = m.alpha(i);
    return alpha * (1.0 - alpha) * static_cast<double>(x_prev) + m.mu(i) * (1.0 - alpha);
}

double nonstat_transition_prob(const RegressionModel& m, Count x, Count y, std::size_t i) {
    if (m.kind() == RegressionKind::Mgwi) return transition_prob(m.step(i), x, y);
    return pinar_prob(m.mu(i), m.alpha(i), x, y);
}

double nonstat_transition_cdf(const RegressionModel& m, Count x, Count y, std::size_t i) {
    if (m.kind() == RegressionKind::Mgwi) return transition_cdf(m.step(i), x, y);
    return pinar_cdf(m.mu(i), m.alpha(i), x, y);
}

CountSeries simulate_nonstat(const RegressionModel& m, Rng& rng) {
    if (m.kind() != RegressionKind::Mgwi) throw std::invalid_argument("simulate_nonstat requires the MGWI kind");
    std::vector<Count> xs(m.length());
    xs[0] = geo_sample(GeoParams(m.mu(0)), rng);
    for (std::size_t i = 1; i < xs.size(); ++i) xs[i] = step_sample(m.step(i), xs[i - 1], rng);
    return CountSeries(std::move(xs));
}

namespace {

std::vector<Count> pinar_path(const RegressionModel& m, Count x1, Rng& rng) {
    std::vector<Count> xs(m.length());
    xs[0] = x1;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double alpha = m.alpha(i);
        xs[i] = binomial_sample(xs[i - 1], alpha, rng) + poisson_sample(m.mu(i) * (1.0 - alpha), rng);
    }
    return xs;
}

std::vector<Count> poisson_innovation_path(const RegressionModel& m, Count x1, Rng& rng) {
    std::vector<Count> xs(m.length());
    xs[0] = x1;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double mu = m.mu(i);
        const double alpha = m.alpha(i);
        xs[i] = thin_sample(ThinningSpec::geometric(alpha), xs[i - 1], rng) +
                poisson_sample(mu * (1.0 + mu) / (1.0 + mu + alpha), rng);
    }
    return xs;
}

}  // namespace

CountSeries simulate_pinar(const RegressionModel& m, Rng& rng) {
    if (m.kind() != RegressionKind::Pinar) throw std::invalid_argument("simulate_pinar requires the PINAR kind");
    const Count x1 = poisson_sample(m.mu(0), rng);
    return CountSeries(pinar_path(m, x1, rng));
}

double nonstat_sspe(const RegressionModel& m, const CountSeries& series) {
    check_aligned(m, series);
    const Links links = evaluate_links(m);
    const auto xs = series.values();
    const bool mgwi = m.kind() == RegressionKind::Mgwi;
    double q = 0.0;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double x_prev = static_cast<double>(xs[i - 1]);
        const double mean = mgwi ? mgwi_mean(links.mu(row(i)), links.alpha(row(i)), x_prev)
                                 : pinar_mean(links.mu(row(i)), links.alpha(row(i)), x_prev);
        const double r = static_cast<double>(xs[i]) - mean;
        q += r * r;
    }
    return links.valid ? q : kInf;
}

double nonstat_loglik(const RegressionModel& m, const CountSeries& series) {
    if (m.kind() != RegressionKind::Mgwi) throw std::invalid_argument("nonstat_loglik requires the MGWI kind");
    check_aligned(m, series);
    const Links links = evaluate_links(m);
    if (!links.valid) return -kInf;
    const auto xs = series.values();
    double ll = geo_log_pmf(GeoParams(links.mu(0)), xs[0]);
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const MgwiStep step = MgwiStep::geometric_marginal(links.mu(row(i)), links.alpha(row(i)));
        ll += log_transition_prob(step, xs[i - 1], xs[i]);
    }
    return ll;
}

Eigen::VectorXd regression_start(const RegressionModel& skeleton, const CountSeries& series) {
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(skeleton.W().cols());
    Eigen::VectorXd gamma = Eigen::VectorXd::Zero(skeleton.V().cols());
    const auto [mu0, alpha0] = moment_start(series);
    double gamma_start = std::log(alpha0);
    if (skeleton.kind() == RegressionKind::Pinar) {
        const double rho = std::clamp(sample_lag1_autocorrelation(series), 0.01, 0.99);
        gamma_start = std::log(rho / (1.0 - rho));
    }
    if (const auto j = intercept_column(skeleton.W())) beta(row(*j)) = std::log(mu0);
    if (const auto j = intercept_column(skeleton.V())) gamma(row(*j)) = gamma_start;
    Eigen::VectorXd theta(beta.size() + gamma.size());
    theta << beta, gamma;
    return theta;
}

FitResult fit_nonstat(const CountSeries& series, const RegressionModel& skeleton, Method method,
                      const RegressionFitOptions& opts) {
    if (skeleton.kind() != RegressionKind::Mgwi) throw std::invalid_argument("fit_nonstat requires the MGWI kind");
    const Objective f = [&](const Eigen::VectorXd& theta) {
        const RegressionModel m = skeleton.with_coefficients(theta);
        return method == Method::Cls ? nonstat_sspe(m, series) : -nonstat_loglik(m, series);
    };
    return run_fit(series, skeleton, method, f, opts);
}

FitResult fit_pinar_cls(const CountSeries& series, const RegressionModel& skeleton,
                        const RegressionFitOptions& opts) {
    if (skeleton.kind() != RegressionKind::Pinar) throw std::invalid_argument("fit_pinar_cls requires the PINAR kind");
    const Objective f = [&](const Eigen::VectorXd& theta) {
        return nonstat_sspe(skeleton.with_coefficients(theta), series);
    };
    return run_fit(series, skeleton, Method::Cls, f, opts);
}

BootstrapResult bootstrap_se_nonstat(const CountSeries& series, const RegressionModel& fitted,
                                     Method method, RegressionBootstrap generative,
                                     int replications, const Rng& rng, int jobs) {
    if (replications < 2) throw std::invalid_argument("bootstrap_se_nonstat: need at least 2 replications");
    check_aligned(fitted, series);
    const bool pinar = generative == RegressionBootstrap::Pinar;
    if (pinar != (fitted.kind() == RegressionKind::Pinar)) {
        throw std::invalid_argument("bootstrap_se_nonstat: generative law does not match the model kind");
    }
    const Count x1 = series[0];
    std::vector<std::optional<Eigen::VectorXd>> draws(static_cast<std::size_t>(replications));
    parallel_for(draws.size(), jobs, [&](std::size_t b) {
        Rng stream = rng.child(static_cast<std::uint64_t>(b));
        std::vector<Count> xs;
        switch (generative) {
            case RegressionBootstrap::GeoInnovMgwi:
                xs.resize(fitted.length());
                xs[0] = x1;
                for (std::size_t i = 1; i < xs.size(); ++i) xs[i] = step_sample(fitted.step(i), xs[i - 1], stream);
                break;
            case RegressionBootstrap::PoissonInnovMgwi: xs = poisson_innovation_path(fitted, x1, stream); break;
            case RegressionBootstrap::Pinar: xs = pinar_path(fitted, x1, stream); break;
        }
        const CountSeries sim(std::move(xs));
        RegressionFitOptions opts;
        opts.init = fitted.coefficients();
        opts.compute_se = false;
        const FitResult refit =
            pinar ? fit_pinar_cls(sim, fitted, opts) : fit_nonstat(sim, fitted, method, opts);
        if (refit.converged) draws[b] = refit.estimates;
    });
    return summarize_bootstrap(draws, fitted.coefficients().size());
}

}  // namespace mgwi

#include "mgwi/estimation.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "mgwi/geo_mgwi.hpp"
#include "mgwi/parallel.hpp"
#include "mgwi/thinning.hpp"

namespace mgwi {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_length(const CountSeries& series, std::size_t n, const char* what) {
    if (series.size() < n) {
        throw std::invalid_argument(std::string(what) + ": series needs at least " +
                                    std::to_string(n) + " observations");
    }
}

}  // namespace

double sample_lag1_autocorrelation(const CountSeries& series) {
    const auto xs = series.values();
    const double n = static_cast<double>(xs.size());
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double c0 = 0.0;
    double c1 = 0.0;
    for (std::size_t t = 0; t < xs.size(); ++t) {
        const double d = static_cast<double>(xs[t]) - mean;
        c0 += d * d;
        if (t > 0) c1 += d * (static_cast<double>(xs[t - 1]) - mean);
    }
    return c0 > 0.0 ? c1 / c0 : 0.0;
}

namespace {

FitResult degenerate_fit(const CountSeries& series, Method method) {
    FitResult out;
    out.method = method;
    out.names = {"mu", "alpha"};
    out.estimates = Eigen::Vector2d(static_cast<double>(series[0]), kNaN);
    out.converged = false;
    out.algorithm = "none";
    out.diagnostics.push_back(
        "zero-variance series: the objective is flat in alpha, so alpha is not identified");
    return out;
}

Eigen::VectorXd start_point(const CountSeries& series, const FitOptions& opts) {
    if (opts.init) {
        if (opts.init->size() != 2 || !((*opts.init)(0) > 0.0) || !((*opts.init)(1) > 0.0)) {
            throw std::invalid_argument("initial values must be two positive numbers (mu, alpha)");
        }
        return *opts.init;
    }
    const auto [mu0, alpha0] = moment_start(series);
    return Eigen::Vector2d(mu0, alpha0);
}

double stationary_sspe(const CountSeries& series, double mu, double alpha) {
    return cls_objective(series, mu, alpha);
}

void copy_optim(const OptimResult& r, FitResult& out) {
    out.converged = r.converged;
    out.iterations = r.iterations;
    out.gradient_norm = r.gradient_norm;
    out.tolerance = r.tolerance;
    out.algorithm = r.algorithm;
    if (!r.converged) out.diagnostics.push_back("optimizer: " + r.message);
}

}  // namespace

std::string_view to_string(Method m) noexcept { return m == Method::Cls ? "cls" : "mle"; }

Method parse_method(std::string_view text) {
    if (text == "cls" || text == "CLS") return Method::Cls;
    if (text == "mle" || text == "MLE") return Method::Mle;
    throw std::invalid_argument("unknown method '" + std::string(text) + "' (expected cls or mle)");
}

double FitResult::estimate(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return estimates(static_cast<Eigen::Index>(i));
    }
    throw std::out_of_range("no parameter named " + std::string(name));
}

double cls_objective(const CountSeries& series, double mu, double alpha) {
    const MgwiStep step = MgwiStep::geometric_marginal(mu, alpha);
    const auto xs = series.values();
    double q = 0.0;
    for (std::size_t t = 1; t < xs.size(); ++t) {
        const double r = static_cast<double>(xs[t]) - cond_mean(step, xs[t - 1]);
        q += r * r;
    }
    return q;
}

std::array<double, 2> cls_gradient(const CountSeries& series, double mu, double alpha) {
    const double a_star = alpha / (1.0 + alpha);
    const double denom = 1.0 + mu + alpha;
    const double mu_eps = mu * (1.0 + mu) / denom;
    const double dmean_dmu = 1.0 - alpha * (1.0 + alpha) / (denom * denom);
    const double dinnov_dalpha = mu * (1.0 + mu) / (denom * denom);
    const auto xs = series.values();
    double sum_r = 0.0;
    double sum_alpha = 0.0;
    for (std::size_t t = 1; t < xs.size(); ++t) {
        const double x_prev = static_cast<double>(xs[t - 1]);
        const double power = std::pow(a_star, x_prev);
        const double r = static_cast<double>(xs[t]) - alpha * (1.0 - power) - mu_eps;
        sum_r += r;
        sum_alpha += r * (1.0 - power * (1.0 + x_prev / (1.0 + alpha)) - dinnov_dalpha);
    }
    return {-2.0 * dmean_dmu * sum_r, -2.0 * sum_alpha};
}

double conditional_loglik(const CountSeries& series, double mu, double alpha) {
    const MgwiStep step = MgwiStep::geometric_marginal(mu, alpha);
    const auto xs = series.values();
    double ll = 0.0;
    for (std::size_t t = 1; t < xs.size(); ++t) ll += log_transition_prob(step, xs[t - 1], xs[t]);
    return ll;
}

double loglik(const CountSeries& series, double mu, double alpha) {
    return conditional_loglik(series, mu, alpha) + geo_log_pmf(GeoParams(mu), series[0]);
}

std::array<double, 2> moment_start(const CountSeries& series) {
    const auto xs = series.values();
    double mu0 = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    if (!(mu0 > 0.0)) mu0 = 0.1;
    const double rho = sample_lag1_autocorrelation(series);
    if (!(rho > 0.0 && rho < 1.0)) return {mu0, 1.0};
    auto rho_of = [mu0](double a) { return a * (1.0 + a) / ((1.0 + mu0 + a) * (1.0 + mu0 + a)); };
    double lo = std::log(1e-8);
    double hi = std::log(1e8);
    if (rho <= rho_of(std::exp(lo)) || rho >= rho_of(std::exp(hi))) return {mu0, 1.0};
    for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
        const double mid = 0.5 * (lo + hi);
        (rho_of(std::exp(mid)) < rho ? lo : hi) = mid;
    }
    return {mu0, std::exp(0.5 * (lo + hi))};
}

FitResult fit_cls(const CountSeries& series, const FitOptions& opts) {
    require_length(series, 2, "fit_cls");
    if (series.is_constant()) return degenerate_fit(series, Method::Cls);

    const Eigen::VectorXd start = start_point(series, opts).array().log();
    const Objective f = [&series](const Eigen::VectorXd& u) {
        return cls_objective(series, std::exp(u(0)), std::exp(u(1)));
    };
    const GradientFn g = [&series](const Eigen::VectorXd& u) {
        const double mu = std::exp(u(0));
        const double alpha = std::exp(u(1));
        const auto d = cls_gradient(series, mu, alpha);
        return Eigen::Vector2d(d[0] * mu, d[1] * alpha).eval();
    };
    const OptimResult r = minimize(f, g, start, opts.optim);

    FitResult out;
    out.method = Method::Cls;
    out.names = {"mu", "alpha"};
    out.estimates = r.x.array().exp();
    out.objective = r.value;
    out.sspe = r.value;
    copy_optim(r, out);
    return out;
}

FitResult fit_mle(const CountSeries& series, const FitOptions& opts) {
    require_length(series, 2, "fit_mle");
    if (series.is_constant()) return degenerate_fit(series, Method::Mle);

    const bool full = opts.full_likelihood;
    auto nll_natural = [&series, full](double mu, double alpha) {
        return -(full ? loglik(series, mu, alpha) : conditional_loglik(series, mu, alpha));
    };
    const Eigen::VectorXd start = start_point(series, opts).array().log();
    const Objective f = [&](const Eigen::VectorXd& u) {
        return nll_natural(std::exp(u(0)), std::exp(u(1)));
    };
    const OptimResult r = minimize(f, GradientFn{}, start, opts.optim);

    FitResult out;
    out.method = Method::Mle;
    out.names = {"mu", "alpha"};
    out.estimates = r.x.array().exp();
    out.objective = -r.value;
    out.sspe = stationary_sspe(series, out.estimates(0), out.estimates(1));
    copy_optim(r, out);

    if (opts.compute_se && r.converged) {
        // Natural-space Hessian taken with steps proportional to each estimate.
        const Eigen::VectorXd theta = out.estimates;
        const Objective scaled = [&](const Eigen::VectorXd& w) {
            return nll_natural(theta(0) * (1.0 + w(0)), theta(1) * (1.0 + w(1)));
        };
        const Eigen::MatrixXd hw = numeric_hessian(scaled, Eigen::Vector2d::Zero(), 1e-4);
        const Eigen::LLT<Eigen::MatrixXd> llt(hw);
        if (llt.info() == Eigen::Success) {
            const Eigen::MatrixXd cov_w = llt.solve(Eigen::MatrixXd::Identity(2, 2));
            out.std_errors = (cov_w.diagonal().array().sqrt() * theta.array()).matrix();
        } else {
            out.diagnostics.push_back("Hessian not positive definite: standard errors unavailable");
        }
    }
    return out;
}

FitResult fit_stationary(const CountSeries& series, Method method, const FitOptions& opts) {
    return method == Method::Cls ? fit_cls(series, opts) : fit_mle(series, opts);
}

CountSeries simulate_poisson_innovation(double mu, double alpha, Count x1, std::size_t n, Rng& rng) {
    if (n == 0) throw std::invalid_argument("simulate_poisson_innovation: n must be >= 1");
    const ThinningSpec thin = ThinningSpec::geometric(alpha);
    const double lambda = mu * (1.0 + mu) / (1.0 + mu + alpha);
    std::vector<Count> xs(n);
    xs[0] = x1;
    for (std::size_t t = 1; t < n; ++t) {
        xs[t] = thin_sample(thin, xs[t - 1], rng) + poisson_sample(lambda, rng);
    }
    return CountSeries(std::move(xs));
}

BootstrapResult bootstrap_se(const CountSeries& series, const FitResult& fitted,
                             BootstrapModel model, int replications, const Rng& rng, int jobs) {
    if (replications < 2) throw std::invalid_argument("bootstrap_se: need at least 2 replications");
    if (!fitted.converged) throw std::invalid_argument("bootstrap_se: fitted model did not converge");
    const double mu = fitted.estimate("mu");
    const double alpha = fitted.estimate("alpha");
    const GeoMgwiModel geo(mu, alpha);
    const std::size_t n = series.size();
    const Count x1 = series[0];

    std::vector<std::optional<Eigen::VectorXd>> draws(static_cast<std::size_t>(replications));
    parallel_for(draws.size(), jobs, [&](std::size_t b) {
        Rng stream = rng.child(static_cast<std::uint64_t>(b));
        std::vector<Count> xs(n);
        if (model == BootstrapModel::GeoMgwi) {
            xs[0] = x1;
            for (std::size_t t = 1; t < n; ++t) xs[t] = step_sample(geo.step(), xs[t - 1], stream);
        } else {
            const CountSeries s = simulate_poisson_innovation(mu, alpha, x1, n, stream);
            xs.assign(s.values().begin(), s.values().end());
        }
        const CountSeries sim(std::move(xs));
        FitOptions opts;
        opts.compute_se = false;
        const FitResult refit = fit_stationary(sim, fitted.method, opts);
        if (refit.converged) draws[b] = refit.estimates;
    });
    return summarize_bootstrap(draws, fitted.estimates.size());
}

}  // namespace mgwi

namespace mgwi {

BootstrapResult summarize_bootstrap(const std::vector<std::optional<Eigen::VectorXd>>& draws,
                                    Eigen::Index dim) {
    BootstrapResult out;
    out.replications = static_cast<int>(draws.size());
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd sum_sq = Eigen::VectorXd::Zero(dim);
    int kept = 0;
    for (const auto& d : draws) {
        if (!d || !d->allFinite()) {
            ++out.dropped;
            continue;
        }
        sum += *d;
        sum_sq += d->cwiseProduct(*d);
        ++kept;
    }
    if (out.dropped * 5 > out.replications || kept < 2) {
        throw std::runtime_error("bootstrap: " + std::to_string(out.dropped) + " of " +
                                 std::to_string(out.replications) +
                                 " refits failed, more than the 20% allowed");
    }
    const Eigen::VectorXd mean = sum / kept;
    out.std_errors =
        ((sum_sq - kept * mean.cwiseProduct(mean)) / (kept - 1)).cwiseMax(0.0).cwiseSqrt();
    return out;
}

}  // namespace mgwi

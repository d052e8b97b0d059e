#include "mgwi/geo_mgwi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mgwi/thinning.hpp"

namespace mgwi {

namespace {

// Below this the direct sum is recomputed in log space.
constexpr double kUnderflowGuard = 1e-280;

double log_sum_exp(const std::vector<double>& terms) {
    const double top = *std::max_element(terms.begin(), terms.end());
    if (!std::isfinite(top)) return top;
    double acc = 0.0;
    for (double t : terms) acc += std::exp(t - top);
    return top + std::log(acc);
}

double log_transition_terms(const MgwiStep& step, Count x, Count y) {
    const GeoParams z(step.alpha);
    const Count m = std::min(x, y);
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(m) + 1);
    for (Count k = 0; k < m; ++k) {
        terms.push_back(geo_log_pmf(z, k) + zmg_log_pmf(step.innovation, y - k));
    }
    if (x <= y) {
        terms.push_back(static_cast<double>(x) * std::log(z.ratio()) +
                        zmg_log_pmf(step.innovation, y - x));
    } else {
        terms.push_back(geo_log_pmf(z, y) + zmg_log_pmf(step.innovation, 0));
    }
    return log_sum_exp(terms);
}

}  // namespace

MgwiStep MgwiStep::geometric_marginal(double mu, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    return MgwiStep{alpha, ZmgParams(alpha / (1.0 + mu + alpha), mu)};
}

double transition_prob(const MgwiStep& step, Count x, Count y) {
    if (y < 0 || x < 0) return 0.0;
    const GeoParams z(step.alpha);
    const Count m = std::min(x, y);
    // For k < m the innovation index y - k is >= 1, so consecutive terms
    // differ by the ratio of the two geometric tails.
    double sum = 0.0;
    if (m > 0) {
        double term = zmg_pmf(step.innovation, y) / (1.0 + step.alpha);
        const double q = z.ratio() / step.innovation.ratio();
        for (Count k = 0; k < m; ++k) {
            sum += term;
            term *= q;
        }
    }
    if (x <= y) {
        sum += geo_survival(z, x) * zmg_pmf(step.innovation, y - x);
    } else {
        sum += geo_pmf(z, y) * zmg_pmf(step.innovation, 0);
    }
    return sum;
}

double log_transition_prob(const MgwiStep& step, Count x, Count y) {
    if (y < 0 || x < 0) return -std::numeric_limits<double>::infinity();
    const double p = transition_prob(step, x, y);
    if (p > kUnderflowGuard && std::isfinite(p)) return std::log(p);
    return log_transition_terms(step, x, y);
}

double transition_cdf(const MgwiStep& step, Count x, Count y) {
    if (y < 0) return 0.0;
    const ThinningSpec thin = ThinningSpec::geometric(step.alpha);
    const Count m = std::min(x, y);
    double acc = 0.0;
    for (Count k = 0; k <= m; ++k) {
        acc += thin_pmf(thin, x, k) * zmg_cdf(step.innovation, y - k);
    }
    return std::min(acc, 1.0);
}

double cond_mean(const MgwiStep& step, Count x_prev) {
    const double a = step.alpha;
    const double power = std::pow(a / (1.0 + a), static_cast<double>(x_prev));
    return a * (1.0 - power) + zmg_moments(step.innovation).mean;
}

double cond_var(const MgwiStep& step, Count x_prev) {
    const double a = step.alpha;
    const double power = std::pow(a / (1.0 + a), static_cast<double>(x_prev));
    const double thin_var = a * (1.0 - power) * (1.0 + a * (1.0 + power)) -
                            2.0 * a * static_cast<double>(x_prev) * power;
    return thin_var + zmg_moments(step.innovation).variance;
}

Count step_sample(const MgwiStep& step, Count x_prev, Rng& rng) {
    const Count thinned = thin_sample(ThinningSpec::geometric(step.alpha), x_prev, rng);
    return thinned + zmg_sample(step.innovation, rng);
}

GeoMgwiModel::GeoMgwiModel(double mu, double alpha)
    : mu_(mu), alpha_(alpha), step_(MgwiStep::geometric_marginal(mu, alpha)) {}

double GeoMgwiModel::innovation_mean() const noexcept {
    return mu_ * (1.0 + mu_) / (1.0 + mu_ + alpha_);
}

double GeoMgwiModel::innovation_variance() const noexcept {
    return zmg_moments(step_.innovation).variance;
}

CountSeries simulate(const GeoMgwiModel& m, std::size_t n, Rng& rng) {
    if (n == 0) throw std::invalid_argument("simulate: n must be >= 1");
    std::vector<Count> xs(n);
    xs[0] = zmg_sample(m.marginal(), rng);
    for (std::size_t t = 1; t < n; ++t) xs[t] = step_sample(m.step(), xs[t - 1], rng);
    return CountSeries(std::move(xs));
}

double transition_prob(const GeoMgwiModel& m, Count x, Count y) {
    return transition_prob(m.step(), x, y);
}

double cond_mean(const GeoMgwiModel& m, Count x_prev) { return cond_mean(m.step(), x_prev); }

double cond_var(const GeoMgwiModel& m, Count x_prev) { return cond_var(m.step(), x_prev); }

double joint_pgf(const GeoMgwiModel& m, double s1, double s2) {
    const double radius_x = 1.0 + 1.0 / m.mu();
    const double a = m.alpha();
    const double inner = s1 * s2 * m.alpha_star();
    if (!(std::abs(s1) < std::min(radius_x, 1.0 + 1.0 / a)) || !(std::abs(s2) < radius_x) ||
        !(std::abs(inner) < radius_x)) {
        throw std::domain_error("joint_pgf: arguments outside the convergence region");
    }
    const ZmgParams marginal = m.marginal();
    const double d = a * (s1 - 1.0);
    return zmg_pgf(m.innovation(), s1) / (1.0 - d) *
           (zmg_pgf(marginal, s2) - d * zmg_pgf(marginal, inner));
}

AffineMap lag_affine_map(const GeoMgwiModel& m, int k) {
    if (k < 1) throw std::invalid_argument("lag_affine_map: k must be >= 1");
    AffineMap h{0.0, 1.0};
    const double as = m.alpha_star();
    double as_pow = as;  // alpha_star^(j-1)
    for (int j = 2; j <= k; ++j) {
        const double as_j = as_pow * as;
        // h_j and g_j with numerator and denominator divided by (1+alpha)^j.
        const double denom = 1.0 - as_j;
        const double hj = (1.0 / (1.0 + m.alpha())) / denom;
        const double gj = (as - as_j) / denom;
        const double cj = zmg_pgf(m.innovation(), as_pow);
        h.intercept += h.slope * cj * hj;
        h.slope *= cj * gj;
        as_pow = as_j;
    }
    return h;
}

double cond_mean_k(const GeoMgwiModel& m, Count x_past, int k) {
    if (k < 1) throw std::invalid_argument("cond_mean_k: k must be >= 1");
    if (k == 1) return cond_mean(m, x_past);
    const AffineMap h = lag_affine_map(m, k);
    const double arg = std::pow(m.alpha_star(), static_cast<double>(k) * static_cast<double>(x_past));
    return m.alpha() * (1.0 - h(arg)) + m.innovation_mean();
}

double geometric_weighted_mean(double mu, double s) noexcept {
    const double d = 1.0 + mu * (1.0 - s);
    return s * mu / (d * d);
}

double autocov(const GeoMgwiModel& m, int k) {
    if (k < 1) throw std::invalid_argument("autocov: k must be >= 1");
    const double mu = m.mu();
    const AffineMap h = lag_affine_map(m, k);
    const double s = std::pow(m.alpha_star(), k);
    const double cross = h.intercept * mu + h.slope * geometric_weighted_mean(mu, s);
    return m.alpha() * (mu - cross) + mu * (m.innovation_mean() - mu);
}

double autocorr(const GeoMgwiModel& m, int k) { return autocov(m, k) / (m.mu() * (1.0 + m.mu())); }

}  // namespace mgwi

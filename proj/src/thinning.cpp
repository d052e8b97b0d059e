#include "mgwi/thinning.hpp"

#include <cmath>
#include <stdexcept>

namespace mgwi {

ThinningSpec::ThinningSpec(ThinningKind kind, double alpha, double eta)
    : kind_(kind), alpha_(alpha), eta_(eta) {
    // Validates alpha > 0 and 1 - eta in (-1/alpha, 1).
    (void)ZmgParams(1.0 - eta, alpha);
}

ThinningSpec ThinningSpec::geometric(double alpha) {
    return ThinningSpec(ThinningKind::Geometric, alpha, 1.0);
}

ThinningSpec ThinningSpec::zmg(double eta, double alpha) {
    return ThinningSpec(ThinningKind::Zmg, alpha, eta);
}

Count thin_sample(const ThinningSpec& spec, Count x, Rng& rng) {
    if (x <= 0) return 0;
    return std::min(x, zmg_sample(spec.operator_law(), rng));
}

double thin_pmf(const ThinningSpec& spec, Count x, Count z) {
    if (z < 0 || z > x) return 0.0;
    const ZmgParams law = spec.operator_law();
    if (z == x) return 1.0 - zmg_cdf(law, z - 1);
    return zmg_pmf(law, z);
}

double thin_pgf(const ThinningSpec& spec, const std::function<double(double)>& pgf_x, double s) {
    if (spec.kind() != ThinningKind::Geometric) {
        throw std::invalid_argument("thin_pgf: only the geometric operator has this closed form");
    }
    const double a = spec.alpha();
    if (!(std::abs(s) < 1.0 + 1.0 / a)) {
        throw std::domain_error("thin_pgf: |s| must be below 1 + 1/alpha");
    }
    const double d = a * (1.0 - s);
    return (1.0 + d * pgf_x(a * s / (1.0 + a))) / (1.0 + d);
}

double thin_factorial_moment(const ThinningSpec& spec, std::span<const double> pgf_derivs, int n) {
    if (spec.kind() != ThinningKind::Geometric) {
        throw std::invalid_argument("thin_factorial_moment: geometric operator only");
    }
    if (n < 1) throw std::invalid_argument("thin_factorial_moment: n must be >= 1");
    if (pgf_derivs.size() < static_cast<std::size_t>(n)) {
        throw std::invalid_argument("thin_factorial_moment: need derivatives 0..n-1");
    }
    const double a = spec.alpha();
    double sum = 0.0;
    double k_fact = 1.0;
    double scale = 1.0;
    for (int k = 0; k < n; ++k) {
        if (k > 0) {
            k_fact *= k;
            scale *= 1.0 + a;
        }
        sum += pgf_derivs[static_cast<std::size_t>(k)] / (k_fact * scale);
    }
    double n_fact = 1.0;
    for (int j = 2; j <= n; ++j) n_fact *= j;
    return n_fact * std::pow(a, n) * (1.0 - sum);
}

std::vector<double> degenerate_pgf_derivatives(Count x, double s, int count) {
    std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)), 0.0);
    for (int k = 0; k < count; ++k) {
        if (k > x) break;
        double falling = 1.0;
        for (int j = 0; j < k; ++j) falling *= static_cast<double>(x - j);
        out[static_cast<std::size_t>(k)] = falling * std::pow(s, static_cast<double>(x - k));
    }
    return out;
}

std::vector<double> geometric_pgf_derivatives(double mu, double s, int count) {
    std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)), 0.0);
    const double base = 1.0 + mu * (1.0 - s);
    double k_fact = 1.0;
    for (int k = 0; k < count; ++k) {
        if (k > 0) k_fact *= k;
        out[static_cast<std::size_t>(k)] = k_fact * std::pow(mu, k) / std::pow(base, k + 1);
    }
    return out;
}

double thin_min_closure(std::span<const double> alphas) {
    if (alphas.empty()) throw std::invalid_argument("thin_min_closure: empty list");
    double prod_a = 1.0;
    double prod_1a = 1.0;
    for (double a : alphas) {
        if (!(a > 0.0)) throw std::invalid_argument("thin_min_closure: alphas must be positive");
        prod_a *= a;
        prod_1a *= 1.0 + a;
    }
    return prod_a / (prod_1a - prod_a);
}

ZmgParams thinned_marginal(const ZmgParams& x_law, const ThinningSpec& spec) {
    // P(min > z) = P(X > z) P(Z > z), both geometric tails with one extra factor.
    const double mu = x_law.mu();
    const double a = spec.alpha();
    const double tail_weight = (1.0 - x_law.pi()) * spec.eta();
    return ZmgParams(1.0 - tail_weight, mu * a / (1.0 + mu + a));
}

}  // namespace mgwi

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "mgwi/distributions.hpp"

namespace mgwi {

enum class ThinningKind { Geometric, Zmg };

/**
 * The thinning operator X -> min(X, Z).
 *
 * Geometric kind: Z ~ Geo(alpha). Zmg kind: Z ~ ZMG(1 - eta, alpha), which
 * reduces to the geometric kind at eta = 1.
 */
class ThinningSpec {
public:
    [[nodiscard]] static ThinningSpec geometric(double alpha);
    [[nodiscard]] static ThinningSpec zmg(double eta, double alpha);

    [[nodiscard]] ThinningKind kind() const noexcept { return kind_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double eta() const noexcept { return eta_; }
    /// Law of the operator variable Z.
    [[nodiscard]] ZmgParams operator_law() const { return ZmgParams(1.0 - eta_, alpha_); }

private:
    ThinningSpec(ThinningKind kind, double alpha, double eta);

    ThinningKind kind_;
    double alpha_;
    double eta_;
};

[[nodiscard]] Count thin_sample(const ThinningSpec& spec, Count x, Rng& rng);

/// Law of min(x, Z) for a fixed x: P(Z = z) below x, P(Z >= z) at z = x, zero above.
[[nodiscard]] double thin_pmf(const ThinningSpec& spec, Count x, Count z);

/// pgf of min(X, Z) for geometric Z, given the pgf of X. Throws std::domain_error
/// outside |s| < 1 + 1/alpha and std::invalid_argument for the ZMG kind.
[[nodiscard]] double thin_pgf(const ThinningSpec& spec, const std::function<double(double)>& pgf_x,
                              double s);

/**
 * n-th factorial moment of min(X, Z) for geometric Z.
 *
 * pgf_derivs[k] must hold the k-th derivative of the pgf of X at alpha/(1+alpha),
 * for k = 0..n-1.
 */
[[nodiscard]] double thin_factorial_moment(const ThinningSpec& spec,
                                           std::span<const double> pgf_derivs, int n);

/// Derivatives 0..count-1 of s^x at s.
[[nodiscard]] std::vector<double> degenerate_pgf_derivatives(Count x, double s, int count);
/// Derivatives 0..count-1 of the Geo(mu) pgf at s.
[[nodiscard]] std::vector<double> geometric_pgf_derivatives(double mu, double s, int count);

/// Parameter of the geometric operator equivalent to the minimum of several
/// independent geometric thinnings.
[[nodiscard]] double thin_min_closure(std::span<const double> alphas);

/// If X ~ ZMG(x_law), the law of min(X, Z). Geometric-in geometric-out for the
/// geometric kind with x_law.pi() == 0.
[[nodiscard]] ZmgParams thinned_marginal(const ZmgParams& x_law, const ThinningSpec& spec);

}  // namespace mgwi

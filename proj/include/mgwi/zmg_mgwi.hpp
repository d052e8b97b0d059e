#pragma once

#include <stdexcept>
#include <string>

#include "mgwi/count_series.hpp"
#include "mgwi/distributions.hpp"
#include "mgwi/thinning.hpp"

namespace mgwi {

class InfeasibleModel : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/**
 * MGWI process with ZMG(1 - pi, mu) marginals driven by the ZMG thinning
 * operator with Z ~ ZMG(1 - eta, alpha).
 *
 * Construction checks only the individual parameter ranges; whether a
 * stationary innovation law exists is a separate question answered by
 * zmg_mgwi_feasible().
 */
class ZmgMgwiModel {
public:
    ZmgMgwiModel(double mu, double pi, double alpha, double eta);

    [[nodiscard]] double mu() const noexcept { return mu_; }
    [[nodiscard]] double pi() const noexcept { return pi_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double eta() const noexcept { return eta_; }

    [[nodiscard]] ZmgParams marginal() const { return ZmgParams(1.0 - pi_, mu_); }
    [[nodiscard]] ThinningSpec thinning() const { return ThinningSpec::zmg(eta_, alpha_); }

private:
    double mu_;
    double pi_;
    double alpha_;
    double eta_;
};

struct Feasibility {
    bool feasible;
    std::string diagnostic;

    explicit operator bool() const noexcept { return feasible; }
};

/// Checks pi*eta < 1, eta != 1 and (1-pi)/(1-pi*eta) * (1 + (1+mu)/alpha) < 1.
[[nodiscard]] Feasibility zmg_mgwi_feasible(double mu, double pi, double alpha, double eta);
[[nodiscard]] Feasibility zmg_mgwi_feasible(const ZmgMgwiModel& m);

/// The innovation is the independent sum of two ZMG laws.
struct InnovationComponents {
    ZmgParams first;
    ZmgParams second;
};

/// Throws InfeasibleModel when the model is not feasible.
[[nodiscard]] InnovationComponents innovation_components(const ZmgMgwiModel& m);

/// pgf of the innovation, computed as the ratio of the marginal pgf to the
/// pgf of the thinned marginal.
[[nodiscard]] double innovation_pgf_ratio(const ZmgMgwiModel& m, double s);

/// X_1 ~ ZMG(1 - pi, mu), then the recursion. Throws InfeasibleModel.
[[nodiscard]] CountSeries simulate_zmg_mgwi(const ZmgMgwiModel& m, std::size_t n, Rng& rng);

}  // namespace mgwi

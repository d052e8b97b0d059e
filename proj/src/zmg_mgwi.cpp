#include "mgwi/zmg_mgwi.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace mgwi {

ZmgMgwiModel::ZmgMgwiModel(double mu, double pi, double alpha, double eta)
    : mu_(mu), pi_(pi), alpha_(alpha), eta_(eta) {
    (void)marginal();
    (void)thinning();
}

Feasibility zmg_mgwi_feasible(double mu, double pi, double alpha, double eta) {
    std::ostringstream why;
    try {
        (void)ZmgParams(1.0 - pi, mu);
        (void)ZmgParams(1.0 - eta, alpha);
    } catch (const std::invalid_argument& e) {
        return {false, std::string("parameter range: ") + e.what()};
    }
    if (!(pi * eta < 1.0)) {
        why << "pi*eta < 1 violated (pi*eta = " << pi * eta << ")";
        return {false, why.str()};
    }
    if (eta == 1.0) {
        return {false, "eta != 1 violated: the geometric operator admits no ZMG-marginal innovation"};
    }
    const double lhs = (1.0 - pi) / (1.0 - pi * eta) * (1.0 + (1.0 + mu) / alpha);
    if (!(lhs < 1.0)) {
        why << "(1-pi)/(1-pi*eta)*(1+(1+mu)/alpha) < 1 violated (value " << lhs << ")";
        return {false, why.str()};
    }
    return {true, "feasible"};
}

Feasibility zmg_mgwi_feasible(const ZmgMgwiModel& m) {
    return zmg_mgwi_feasible(m.mu(), m.pi(), m.alpha(), m.eta());
}

InnovationComponents innovation_components(const ZmgMgwiModel& m) {
    if (const Feasibility f = zmg_mgwi_feasible(m); !f) {
        throw InfeasibleModel("ZMG-MGWI model infeasible: " + f.diagnostic);
    }
    const double mu = m.mu();
    const double a = m.alpha();
    const double pe = m.pi() * m.eta();
    const double thinned_mean = mu * a / (1.0 + mu + a);
    const double pi1 = (1.0 - m.pi()) / (1.0 - pe) * (1.0 + (1.0 + mu) / a);
    return {ZmgParams(pi1, (1.0 - pe) * thinned_mean), ZmgParams(a / (1.0 + mu + a), mu)};
}

double innovation_pgf_ratio(const ZmgMgwiModel& m, double s) {
    const ZmgParams thinned = thinned_marginal(m.marginal(), m.thinning());
    return zmg_pgf(m.marginal(), s) / zmg_pgf(thinned, s);
}

CountSeries simulate_zmg_mgwi(const ZmgMgwiModel& m, std::size_t n, Rng& rng) {
    if (n == 0) throw std::invalid_argument("simulate_zmg_mgwi: n must be >= 1");
    const InnovationComponents eps = innovation_components(m);
    const ThinningSpec thin = m.thinning();
    std::vector<Count> xs(n);
    xs[0] = zmg_sample(m.marginal(), rng);
    for (std::size_t t = 1; t < n; ++t) {
        const Count thinned = thin_sample(thin, xs[t - 1], rng);
        xs[t] = thinned + zmg_sample(eps.first, rng) + zmg_sample(eps.second, rng);
    }
    return CountSeries(std::move(xs));
}

}  // namespace mgwi

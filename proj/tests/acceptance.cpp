// Acceptance runner: one PASS/FAIL line per criterion.
#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "mgwi/datasets.hpp"
#include "mgwi/diagnostics.hpp"
#include "mgwi/estimation.hpp"
#include "mgwi/geo_mgwi.hpp"
#include "mgwi/mc_harness.hpp"
#include "mgwi/parallel.hpp"
#include "mgwi/predictive.hpp"
#include "mgwi/regression.hpp"
#include "mgwi/thinning.hpp"
#include "mgwi/zmg_mgwi.hpp"
#include "test_support.hpp"

using namespace mgwi;

namespace {

struct Settings {
    bool paper_scale = false;
    int jobs = 1;
};

class Report {
public:
    void check(const std::string& name, bool ok, const std::string& detail) {
        std::printf("    [%s] %s: %s\n", ok ? " ok " : "FAIL", name.c_str(), detail.c_str());
        all_ &= ok;
    }
    static void info(const std::string& text) { std::printf("    [info] %s\n", text.c_str()); }
    [[nodiscard]] bool passed() const { return all_; }

private:
    bool all_ = true;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// ---- Criterion 1 -------------------------------------------------------

// Law of min(X, Z) by summing over the support of X.
std::vector<double> brute_thinned_pmf(const std::function<double(Count)>& pmf_x, const ThinningSpec& spec,
                                      Count max_x) {
    std::vector<double> out(static_cast<std::size_t>(max_x + 1), 0.0);
    for (Count x = 0; x <= max_x; ++x) {
        const double px = pmf_x(x);
        for (Count z = 0; z <= x; ++z) out[static_cast<std::size_t>(z)] += px * thin_pmf(spec, x, z);
    }
    return out;
}

double power_series(const std::vector<double>& coef, double s) {
    double total = 0.0;
    for (std::size_t k = coef.size(); k-- > 0;) total = total * s + coef[k];
    return total;
}

void criterion1(Report& r, const Settings&) {
    const std::vector<double> grid{-1.2, -0.5, 0.0, 0.3, 0.7, 0.95, 1.0, 1.2};
    {
        double worst = 0.0;
        for (const ZmgParams& p : {ZmgParams::geometric(2.0), ZmgParams(0.3, 2.0), ZmgParams(-0.4, 2.0)}) {
            std::vector<double> pmf(500);
            for (std::size_t k = 0; k < pmf.size(); ++k) pmf[k] = zmg_pmf(p, static_cast<Count>(k));
            for (double s : grid) worst = std::max(worst, std::abs(power_series(pmf, s) - zmg_pgf(p, s)));
        }
        const GeoParams g(2.0);
        std::vector<double> pmf(500);
        for (std::size_t k = 0; k < pmf.size(); ++k) pmf[k] = geo_pmf(g, static_cast<Count>(k));
        for (double s : grid) worst = std::max(worst, std::abs(power_series(pmf, s) - geo_pgf(g, s)));
        r.check("pmf/pgf consistency", worst <= 1e-12, fmt("max abs error %.2e (tol 1e-12)", worst));
    }
    {
        double worst = 0.0;
        for (double alpha : {0.5, 1.0, 3.0}) {
            const ThinningSpec spec = ThinningSpec::geometric(alpha);
            const double radius = 1.0 + 1.0 / alpha;
            struct Case {
                std::function<double(Count)> pmf;
                std::function<double(double)> pgf;
            };
            const ZmgParams geo = ZmgParams::geometric(2.0);
            const ZmgParams zmg(0.4, 3.0);
            const std::vector<Case> cases{
                {[&](Count x) { return zmg_pmf(geo, x); }, [&](double s) { return zmg_pgf(geo, s); }},
                {[&](Count x) { return zmg_pmf(zmg, x); }, [&](double s) { return zmg_pgf(zmg, s); }},
                {[](Count x) { return x == 5 ? 1.0 : 0.0; }, [](double s) { return std::pow(s, 5); }},
            };
            for (const Case& c : cases) {
                const std::vector<double> law = brute_thinned_pmf(c.pmf, spec, 400);
                for (double s : {-0.9, -0.3, 0.0, 0.4, 0.8, 1.0, 1.3}) {
                    if (std::abs(s) >= radius) continue;
                    worst = std::max(worst, std::abs(power_series(law, s) - thin_pgf(spec, c.pgf, s)));
                }
            }
        }
        r.check("thinned pgf identity", worst <= 1e-12, fmt("max abs error %.2e (tol 1e-12)", worst));
    }
    {
        double worst = 0.0;
        for (double alpha : {0.5, 1.0, 3.0}) {
            const ThinningSpec spec = ThinningSpec::geometric(alpha);
            const ZmgParams geo = ZmgParams::geometric(2.0);
            const std::vector<double> law = brute_thinned_pmf([&](Count x) { return zmg_pmf(geo, x); }, spec, 400);
            const double at = alpha / (1.0 + alpha);
            for (int n = 1; n <= 4; ++n) {
                double brute = 0.0;
                for (std::size_t z = 0; z < law.size(); ++z) {
                    double falling = 1.0;
                    for (int j = 0; j < n; ++j) falling *= static_cast<double>(z) - j;
                    brute += falling * law[z];
                }
                const double closed = thin_factorial_moment(spec, geometric_pgf_derivatives(2.0, at, n), n);
                worst = std::max(worst, std::abs(closed - brute) / std::max(1.0, std::abs(brute)));
            }
        }
        r.check("factorial moments", worst <= 1e-8, fmt("max rel error %.2e (tol 1e-8)", worst));
    }
    {
        const std::size_t draws = 1000000;
        bool ok = true;
        double worst_z = 0.0;
        Rng root(101);
        for (const std::vector<double>& alphas : {std::vector<double>{1.0, 1.0}, std::vector<double>{0.5, 2.0}}) {
            const double closure = thin_min_closure(alphas);
            Rng rng = root.child(static_cast<std::uint64_t>(alphas[0] * 1000));
            std::vector<Count> mins(draws);
            for (Count& m : mins) {
                Count v = geo_sample(GeoParams(alphas[0]), rng);
                for (std::size_t i = 1; i < alphas.size(); ++i) v = std::min(v, geo_sample(GeoParams(alphas[i]), rng));
                m = v;
            }
            const std::vector<double> freq = testing::frequencies(mins, 6);
            const GeoParams law(closure);
            for (Count k = 0; k < 6; ++k) {
                const double p = geo_pmf(law, k);
                const double se = std::sqrt(p * (1 - p) / static_cast<double>(draws));
                worst_z = std::max(worst_z, std::abs(freq[static_cast<std::size_t>(k)] - p) / se);
                ok &= testing::within_binomial_se(freq[static_cast<std::size_t>(k)], p, draws);
            }
        }
        ok &= std::abs(thin_min_closure(std::vector<double>{1.0, 1.0}) - 1.0 / 3.0) < 1e-15;
        r.check("min-closure law", ok, fmt("10^6 draws per case, worst |z| %.2f over bins 0..5 (limit 3)", worst_z));
    }
}

// ---- Criterion 2 -------------------------------------------------------

void criterion2(Report& r, const Settings&) {
    const std::vector<GeoMgwiModel> models{{2.0, 1.0}, {1.2, 0.5}, {0.5, 1.5}, {0.3, 0.5}};
    {
        double worst = 0.0;
        for (const GeoMgwiModel& m : models) {
            for (Count x = 0; x <= 50; ++x) {
                double total = 0.0;
                for (Count y = 0; y <= x + 400; ++y) total += transition_prob(m, x, y);
                worst = std::max(worst, std::abs(total - 1.0));
            }
        }
        r.check("transition rows sum to one", worst <= 1e-12, fmt("max |row sum - 1| %.2e for x = 0..50 (tol 1e-12)", worst));
    }
    {
        double worst = 0.0;
        for (const GeoMgwiModel& m : models) {
            for (Count x = 0; x <= 10; ++x) {
                double m1 = 0.0;
                double m2 = 0.0;
                for (Count y = 0; y <= 600; ++y) {
                    const double p = transition_prob(m, x, y);
                    m1 += static_cast<double>(y) * p;
                    m2 += static_cast<double>(y) * static_cast<double>(y) * p;
                }
                worst = std::max(worst, std::abs(cond_mean(m, x) - m1));
                worst = std::max(worst, std::abs(cond_var(m, x) - (m2 - m1 * m1)));
            }
        }
        r.check("conditional moments vs transition sums", worst <= 1e-8, fmt("max abs error %.2e (tol 1e-8)", worst));
    }
    const GeoMgwiModel m(2.0, 1.0);
    Rng rng(202);
    const CountSeries s = simulate(m, 1000000, rng);
    const std::vector<Count> xs(s.values().begin(), s.values().end());
    {
        bool ok = true;
        double worst_z = 0.0;
        for (Count k = 0; k <= 8; ++k) {
            const auto [freq, se] = testing::batch_frequency(xs, k, 100);
            const double p = geo_pmf(GeoParams(2.0), k);
            worst_z = std::max(worst_z, std::abs(freq - p) / se);
            ok &= std::abs(freq - p) <= 3 * se;
        }
        r.check("stationary Geo(2) marginal", ok, fmt("10^6 steps, worst |z| %.2f over bins 0..8 (limit 3, batch-means SE)", worst_z));
    }
    {
        const double rho = sample_lag1_autocorrelation(s);
        const double target = 1.0 * 2.0 / 16.0;
        r.check("lag-1 autocorrelation", std::abs(rho - target) <= 0.005,
                fmt("simulated %.5f vs %.5f (tol 0.005)", rho, target));
    }
}

// ---- Criterion 3 -------------------------------------------------------

// Autocovariance with the alternative prefactor (alpha_star / k) * Psi'(s) for E[X s^X].
double autocov_printed_prefactor(const GeoMgwiModel& m, int k) {
    const double mu = m.mu();
    const AffineMap h = lag_affine_map(m, k);
    const double s = std::pow(m.alpha_star(), k);
    const double psi_prime = mu / ((1 + mu * (1 - s)) * (1 + mu * (1 - s)));
    const double cross = h.intercept * mu + h.slope * (m.alpha_star() / k) * psi_prime;
    return m.alpha() * (mu - cross) + mu * (m.innovation_mean() - mu);
}

void criterion3(Report& r, const Settings&) {
    const GeoMgwiModel m(2.0, 1.0);
    {
        double worst = 0.0;
        for (Count x = 0; x <= 10; ++x) {
            double ck = 0.0;
            for (Count y = 0; y <= 800; ++y) ck += transition_prob(m, x, y) * cond_mean(m, y);
            worst = std::max(worst, std::abs(ck - cond_mean_k(m, x, 2)));
        }
        r.check("two-step conditional mean", worst <= 1e-8, fmt("max abs error %.2e vs Chapman-Kolmogorov (tol 1e-8)", worst));
    }
    Rng rng(303);
    const std::size_t n = 10000000;
    const CountSeries s = simulate(m, n, rng);
    const std::vector<double> x = s.as_doubles();
    const double mean = testing::mean_of(x);
    const std::size_t batches = 100;
    bool ok = true;
    double z_closed_worst = 0.0;
    double z_printed_worst = 0.0;
    for (int k = 1; k <= 5; ++k) {
        const std::size_t len = (n - static_cast<std::size_t>(k)) / batches;
        std::vector<double> bm(batches, 0.0);
        for (std::size_t b = 0; b < batches; ++b) {
            for (std::size_t i = b * len; i < (b + 1) * len; ++i) {
                const std::size_t t = i + static_cast<std::size_t>(k);
                bm[b] += (x[t] - mean) * (x[i] - mean);
            }
            bm[b] /= static_cast<double>(len);
        }
        const double est = testing::mean_of(bm);
        const double se = std::sqrt(testing::variance_of(bm) / static_cast<double>(batches));
        const double closed = autocov(m, k);
        const double printed = autocov_printed_prefactor(m, k);
        const double z = (est - closed) / se;
        const double zp = (est - printed) / se;
        z_closed_worst = std::max(z_closed_worst, std::abs(z));
        if (k >= 2) z_printed_worst = std::max(z_printed_worst, std::abs(zp));
        ok &= std::abs(z) <= 3.0;
        Report::info(fmt("k = %d: simulated %.5f (se %.5f), closed form %.5f (z %.2f), printed prefactor %.5f (z %.2f)", k,
                         est, se, closed, z, printed, zp));
    }
    r.check("autocovariance k = 1..5", ok, fmt("10^7 steps, worst |z| %.2f (limit 3)", z_closed_worst));
    Report::info(fmt("the (alpha_star/k) Psi'(s) form reaches |z| %.2f at k >= 2 against the same simulation", z_printed_worst));

    // Exact lag-k covariance on the chain truncated at 400 states.
    const Count states = 400;
    std::vector<std::vector<double>> p(static_cast<std::size_t>(states), std::vector<double>(static_cast<std::size_t>(states)));
    for (Count a = 0; a < states; ++a)
        for (Count b = 0; b < states; ++b) p[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = transition_prob(m, a, b);
    std::vector<double> g(static_cast<std::size_t>(states));
    for (Count a = 0; a < states; ++a) g[static_cast<std::size_t>(a)] = static_cast<double>(a);
    double closed_gap = 0.0;
    double printed_gap = 0.0;
    for (int k = 1; k <= 5; ++k) {
        std::vector<double> next(g.size(), 0.0);
        for (std::size_t a = 0; a < g.size(); ++a)
            for (std::size_t b = 0; b < g.size(); ++b) next[a] += p[a][b] * g[b];
        g = std::move(next);
        double exact = 0.0;
        for (Count a = 0; a < states; ++a)
            exact += geo_pmf(GeoParams(m.mu()), a) * static_cast<double>(a) * g[static_cast<std::size_t>(a)];
        exact -= m.mu() * m.mu();
        closed_gap = std::max(closed_gap, std::abs(autocov(m, k) - exact));
        if (k >= 2) printed_gap = std::max(printed_gap, std::abs(autocov_printed_prefactor(m, k) - exact));
    }
    r.check("autocovariance vs exact chain", closed_gap <= 1e-9,
            fmt("closed form max gap %.2e (tol 1e-9); (alpha_star/k) Psi' form max gap %.2e", closed_gap, printed_gap));
    Report::info(printed_gap > 1e-6 ? "E[X s^X] = s Psi'(s) is the supported form"
                                    : "exact chain does not separate the two forms");
}

// ---- Criterion 4 -------------------------------------------------------

void criterion4(Report& r, const Settings& cfg) {
    Scenario sc = builtin_scenario("I", cfg.paper_scale ? Scale::Paper : Scale::Desk);
    sc.sample_sizes = {500};
    sc.replications = cfg.paper_scale ? 1000 : 200;
    sc.seed = 11;
    const double mean_tol = cfg.paper_scale ? 0.03 : 0.05;
    const double rmse_tol = cfg.paper_scale ? 0.15 : 0.25;
    const StudyResult study = run_study({sc}, cfg.jobs);
    struct Ref {
        Method method;
        double mean;
        double rmse;
    };
    for (const Ref& ref : {Ref{Method::Mle, 2.013, 0.124}, Ref{Method::Cls, 2.014, 0.125}}) {
        const McCell& c = study.table.cell("I", 500, ref.method, "mu");
        const bool mean_ok = std::abs(c.mean - ref.mean) <= mean_tol;
        const bool rmse_ok = std::abs(c.rmse - ref.rmse) <= rmse_tol * ref.rmse;
        const std::string name = std::string("mu ") + std::string(to_string(ref.method));
        r.check(name + " mean", mean_ok, fmt("%.4f vs %.3f (tol %.2f), %d reps, %d failures", c.mean, ref.mean, mean_tol,
                                             c.replications, c.failures));
        r.check(name + " rmse", rmse_ok, fmt("%.4f vs %.3f (tol %.0f%%)", c.rmse, ref.rmse, rmse_tol * 100));
    }
    for (const McCell& c : study.table.cells) {
        if (c.parameter == "alpha") {
            Report::info(fmt("alpha %s: %s", std::string(to_string(c.method)).c_str(),
                             format_mean_rmse(c.mean, c.rmse).c_str()));
        }
    }
    Rng rng(404);
    const CountSeries s = simulate(GeoMgwiModel(2.0, 1.0), 500, rng);
    double worst = 0.0;
    for (const auto& [mu, alpha] : std::vector<std::pair<double, double>>{{2.0, 1.0}, {1.5, 0.4}, {3.0, 2.5}}) {
        const auto g = cls_gradient(s, mu, alpha);
        const double h_mu = 1e-5 * mu;
        const double h_alpha = 1e-5 * alpha;
        const double fd_mu = (cls_objective(s, mu + h_mu, alpha) - cls_objective(s, mu - h_mu, alpha)) / (2 * h_mu);
        const double fd_alpha =
            (cls_objective(s, mu, alpha + h_alpha) - cls_objective(s, mu, alpha - h_alpha)) / (2 * h_alpha);
        worst = std::max(worst, std::abs(g[0] - fd_mu) / std::max(1.0, std::abs(fd_mu)));
        worst = std::max(worst, std::abs(g[1] - fd_alpha) / std::max(1.0, std::abs(fd_alpha)));
    }
    r.check("CLS gradient vs finite differences", worst <= 1e-5, fmt("max rel error %.2e (tol 1e-5)", worst));
}

// ---- Criterion 5 -------------------------------------------------------

void criterion5(Report& r, const Settings& cfg) {
    Scenario sc = builtin_scenario("V", cfg.paper_scale ? Scale::Paper : Scale::Desk);
    sc.sample_sizes = {500};
    sc.replications = cfg.paper_scale ? 500 : 100;
    sc.methods = {Method::Mle};
    sc.seed = 5;
    const StudyResult study = run_study({sc}, cfg.jobs);
    const std::vector<std::string> names = sc.parameter_names();
    const std::vector<double> ref{1.993, 1.007, 0.673, 2.005, 1.003};
    for (std::size_t j = 0; j < names.size(); ++j) {
        const McCell& c = study.table.cell("V", 500, Method::Mle, names[j]);
        r.check(names[j] + " mean", std::abs(c.mean - ref[j]) <= 0.1,
                fmt("%.4f vs %.3f (tol 0.1), rmse %.3f, %d reps, %d failures", c.mean, ref[j], c.rmse, c.replications,
                    c.failures));
    }
}

// ---- Criterion 6 -------------------------------------------------------

void check_coefficients(Report& r, const std::string& label, const Eigen::VectorXd& est,
                        const std::vector<std::string>& names, const std::vector<double>& ref) {
    bool ok = true;
    std::string detail;
    for (std::size_t j = 0; j < ref.size(); ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        const bool within = std::abs(est(jj) - ref[j]) <= 0.02 * std::abs(ref[j]);
        ok &= within;
        detail += fmt("%s %.4f vs %.4f%s; ", names[j].c_str(), est(jj), ref[j], within ? "" : " (out)");
    }
    r.check(label, ok, detail + "tol 2%");
}

void criterion6(Report& r, const Settings&) {
    const CountSeries h = hansen_series();
    const std::vector<Covariate> trend{Covariate::TrendOver252};
    const Eigen::MatrixXd design = design_with_intercept(trend, h.size());

    const RegressionModel mgwi(RegressionKind::Mgwi, design, design);
    const FitResult mf = fit_nonstat(h, mgwi, Method::Cls);
    r.check("MGWI converged", mf.converged, fmt("%s, gradient norm %.2e", mf.algorithm.c_str(), mf.gradient_norm));
    check_coefficients(r, "MGWI coefficients", mf.estimates, mf.names, {4.3538, -0.7243, 4.5297, -0.5613});
    r.check("MGWI SSPE", std::abs(mf.sspe - 58742.31) <= 0.005 * 58742.31, fmt("%.3f vs 58742.31 (tol 0.5%%)", mf.sspe));

    const RegressionModel pinar(RegressionKind::Pinar, design, design);
    const FitResult pf = fit_pinar_cls(h, pinar);
    r.check("PINAR converged", pf.converged, fmt("%s, gradient norm %.2e", pf.algorithm.c_str(), pf.gradient_norm));
    const std::vector<double> pinar_ref{-0.7668, 0.7997, 4.5290, -0.6883};
    check_coefficients(r, "PINAR coefficients", pf.estimates, pf.names, pinar_ref);
    {
        // The same four numbers with the mean and autocorrelation links exchanged.
        Eigen::VectorXd swapped(4);
        swapped << pf.estimates(2), pf.estimates(3), pf.estimates(0), pf.estimates(1);
        double worst = 0.0;
        for (int j = 0; j < 4; ++j) worst = std::max(worst, std::abs(swapped(j) - pinar_ref[static_cast<std::size_t>(j)]) /
                                                                 std::abs(pinar_ref[static_cast<std::size_t>(j)]));
        Report::info(fmt("PINAR reference read with links exchanged (gamma0, gamma1, beta0, beta1): max rel gap %.3f%%",
                         worst * 100));
    }
    r.check("PINAR SSPE", std::abs(pf.sspe - 59919.40) <= 0.005 * 59919.40, fmt("%.3f vs 59919.40 (tol 0.5%%)", pf.sspe));
    r.check("SSPE ordering", mf.sspe < pf.sspe, fmt("MGWI %.2f < PINAR %.2f", mf.sspe, pf.sspe));

    const Summary d = describe(h);
    r.check("descriptive integers", d.minimum == 5 && d.maximum == 142 && d.median == 66,
            fmt("min %g, max %g, median %g", d.minimum, d.maximum, d.median));
    // Half a unit in the last printed digit.
    const bool moments_ok = std::abs(d.mean - 66.63) <= 0.005 && std::abs(d.variance - 481.103) <= 0.0005 &&
                            std::abs(d.skewness - 0.250) <= 0.0005 && std::abs(d.kurtosis - 3.937) <= 0.0005;
    r.check("descriptive moments", moments_ok,
            fmt("n %zu, mean %.5f, variance %.5f, skewness %.5f, kurtosis %.5f vs 66.63, 481.103, 0.250, 3.937", d.n,
                d.mean, d.variance, d.skewness, d.kurtosis));
    const std::vector<double> all_rows = h.as_doubles();
    const std::vector<double> first240(all_rows.begin(), all_rows.begin() + 240);
    const Summary d240 = describe(first240);
    Report::info(fmt("first 240 rows: mean %.3f, variance %.3f, max %g", d240.mean, d240.variance, d240.maximum));
}

// ---- Criterion 7 -------------------------------------------------------

int inside_band(const std::vector<double>& v) {
    const AcfPacf a = sample_acf_pacf(v, 10);
    const double band = 2.0 / std::sqrt(static_cast<double>(v.size()));
    int inside = 0;
    for (std::size_t k = 1; k <= 10; ++k) inside += std::abs(a.acf[k]) < band ? 1 : 0;
    return inside;
}

void criterion7(Report& r, const Settings&) {
    const GeoMgwiModel m(2.0, 1.0);
    Rng sim(707);
    const CountSeries s = simulate(m, 5000, sim);
    const StationaryLaw law(m);
    const ResidualSeries pearson = pearson_residuals(s, law);
    Rng draw(708);
    const ResidualSeries pseudo = pseudo_residuals(s, law, draw);
    const double var = testing::variance_of(pearson.values);
    r.check("Pearson variance", var > 0.8 && var < 1.2, fmt("%.4f in (0.8, 1.2)", var));
    const double skew = describe(pseudo.values).skewness;
    r.check("pseudo-residual skewness", std::abs(skew) < 0.15, fmt("%.4f (limit 0.15)", skew));
    const int pin = inside_band(pearson.values);
    const int qin = inside_band(pseudo.values);
    r.check("Pearson ACF band", pin >= 9, fmt("%d of 10 lags inside 2/sqrt(n)", pin));
    r.check("pseudo-residual ACF band", qin >= 9, fmt("%d of 10 lags inside 2/sqrt(n)", qin));
}

// ---- Criterion 8 -------------------------------------------------------

void criterion8(Report& r, const Settings&) {
    const auto& f = testing::kZmgFixture;
    const Feasibility unit = zmg_mgwi_feasible(f.mu, f.pi, f.alpha, 1.0);
    bool rejected = !unit.feasible;
    try {
        Rng rng(1);
        (void)simulate_zmg_mgwi(ZmgMgwiModel(f.mu, f.pi, f.alpha, 1.0), 10, rng);
        rejected = false;
    } catch (const InfeasibleModel&) {
    }
    r.check("eta = 1 rejected", rejected, unit.diagnostic);

    const ZmgMgwiModel m(f.mu, f.pi, f.alpha, f.eta);
    const Feasibility feas = zmg_mgwi_feasible(m);
    r.check("fixture feasible", feas.feasible,
            fmt("mu %g, pi %g, alpha %g, eta %g: %s", f.mu, f.pi, f.alpha, f.eta, feas.diagnostic.c_str()));
    if (!feas.feasible) return;
    const InnovationComponents eps = innovation_components(m);
    const ZmgParams thinned = thinned_marginal(m.marginal(), m.thinning());
    double worst = 0.0;
    for (double s = -1.0; s <= 1.0001; s += 0.1) {
        const double lhs = zmg_pgf(m.marginal(), s);
        const double rhs = zmg_pgf(thinned, s) * zmg_pgf(eps.first, s) * zmg_pgf(eps.second, s);
        worst = std::max(worst, std::abs(lhs - rhs));
        worst = std::max(worst, std::abs(innovation_pgf_ratio(m, s) - zmg_pgf(eps.first, s) * zmg_pgf(eps.second, s)));
    }
    r.check("pgf factorization", worst <= 1e-12, fmt("max abs error %.2e on s in [-1, 1] (tol 1e-12)", worst));

    Rng rng(808);
    const CountSeries s = simulate_zmg_mgwi(m, 1000000, rng);
    const std::vector<Count> xs(s.values().begin(), s.values().end());
    bool ok = true;
    double worst_z = 0.0;
    for (Count k = 0; k <= 8; ++k) {
        const auto [freq, se] = testing::batch_frequency(xs, k, 100);
        const double p = zmg_pmf(m.marginal(), k);
        worst_z = std::max(worst_z, std::abs(freq - p) / se);
        ok &= std::abs(freq - p) <= 3 * se;
    }
    r.check("stationary ZMG marginal", ok, fmt("10^6 steps, worst |z| %.2f over bins 0..8 (limit 3, batch-means SE)", worst_z));
}

struct Criterion {
    const char* title;
    double limit_seconds;
    void (*run)(Report&, const Settings&);
};

const Criterion kCriteria[] = {
    {"closed-form layer", 10, criterion1},
    {"process laws", 60, criterion2},
    {"lag-k machinery", 300, criterion3},
    {"stationary estimation", 600, criterion4},
    {"regression estimation", 900, criterion5},
    {"Hansen application", 120, criterion6},
    {"diagnostics under the true model", 60, criterion7},
    {"ZMG-MGWI", 120, criterion8},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance checks"};
    int only = 0;
    Settings cfg;
    cfg.jobs = default_jobs();
    app.add_option("--criterion", only, "Run one criterion (1-8)")->check(CLI::Range(1, 8));
    app.add_flag("--paper-scale", cfg.paper_scale, "Full replication counts and tighter bands");
    app.add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    bool all = true;
    for (int i = 1; i <= 8; ++i) {
        if (only != 0 && i != only) continue;
        const Criterion& c = kCriteria[i - 1];
        std::printf("criterion %d: %s\n", i, c.title);
        Report report;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(report, cfg);
        } catch (const std::exception& e) {
            report.check("exception", false, e.what());
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report.check("runtime", elapsed < c.limit_seconds, fmt("%.1f s (limit %.0f s)", elapsed, c.limit_seconds));
        std::printf("%s criterion %d: %s\n", report.passed() ? "PASS" : "FAIL", i, c.title);
        std::fflush(stdout);
        all &= report.passed();
    }
    return all ? 0 : 1;
}

// mgwi: simulate, fit, predict, diagnose, describe and Monte Carlo for MGWI count models.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mgwi/covariates.hpp"
#include "mgwi/csv.hpp"
#include "mgwi/datasets.hpp"
#include "mgwi/diagnostics.hpp"
#include "mgwi/estimation.hpp"
#include "mgwi/geo_mgwi.hpp"
#include "mgwi/mc_harness.hpp"
#include "mgwi/parallel.hpp"
#include "mgwi/predictive.hpp"
#include "mgwi/regression.hpp"
#include "mgwi/zmg_mgwi.hpp"

using json = nlohmann::ordered_json;
using namespace mgwi;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitConvergence = 4;

struct ConvergenceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string config_hash(const json& config) {
    const std::string text = config.dump();
    return hex64(fnv1a64(text.data(), text.size()));
}

json vector_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

json named_json(const std::vector<std::string>& names, const Eigen::VectorXd& v) {
    json out = json::object();
    for (std::size_t i = 0; i < names.size(); ++i) out[names[i]] = v(static_cast<Eigen::Index>(i));
    return out;
}

Eigen::VectorXd parse_vector(const std::string& text, const char* what) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" ", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string(what) + ": '" + item + "' is not a number");
        }
    }
    return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

std::vector<std::string> split_names(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(' '));
        item.erase(item.find_last_not_of(' ') + 1);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

// Input data: either "hansen" or "csv:<path>".
SeriesTable load_data(const std::string& spec) {
    if (spec.rfind("csv:", 0) == 0) return read_series_csv_file(spec.substr(4));
    try {
        const CountSeries s = embedded_dataset(spec);
        return SeriesTable{s, {}, Eigen::MatrixXd(static_cast<Eigen::Index>(s.size()), 0)};
    } catch (const std::invalid_argument& e) {
        throw DataError(std::string(e.what()) + "; use csv:<path> for a file");
    }
}

// Design columns are recipe names or CSV covariate names.
Eigen::MatrixXd build_design(const std::vector<std::string>& columns, const SeriesTable& data) {
    const std::size_t n = data.series.size();
    Eigen::MatrixXd X(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j) {
        const auto col = static_cast<Eigen::Index>(j);
        try {
            const Covariate c = parse_covariate(columns[j]);
            X.col(col) = design_matrix(std::span<const Covariate>(&c, 1), n).col(0);
        } catch (const std::invalid_argument&) {
            X.col(col) = data.covariate(columns[j]);
        }
    }
    return X;
}

std::vector<std::string> design_columns(const std::string& explicit_list, const std::string& trend) {
    if (!explicit_list.empty()) return split_names(explicit_list);
    std::vector<std::string> cols{"intercept"};
    for (const auto& t : split_names(trend)) cols.push_back(t);
    return cols;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out << text;
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw DataError(path + ": " + e.what());
    }
}

std::vector<std::string> provenance_comments(std::uint64_t seed, const std::string& hash) {
    return {"seed=" + std::to_string(seed), "config_hash=" + hash};
}

// ---- model reconstruction from a fit JSON --------------------------------

struct FittedModel {
    std::string kind;
    std::unique_ptr<ConditionalLaw> law;
};

FittedModel model_from_fit(const json& fit, const SeriesTable& data) {
    FittedModel out;
    try {
        out.kind = fit.at("model").get<std::string>();
        const json& est = fit.at("estimates");
        if (out.kind == "geo-mgwi") {
            out.law = std::make_unique<StationaryLaw>(
                GeoMgwiModel(est.at("mu").get<double>(), est.at("alpha").get<double>()));
            return out;
        }
        const auto mu_cols = fit.at("mu_covariates").get<std::vector<std::string>>();
        const auto alpha_cols = fit.at("alpha_covariates").get<std::vector<std::string>>();
        const RegressionKind kind = out.kind == "pinar" ? RegressionKind::Pinar : RegressionKind::Mgwi;
        Eigen::VectorXd beta(static_cast<Eigen::Index>(mu_cols.size()));
        Eigen::VectorXd gamma(static_cast<Eigen::Index>(alpha_cols.size()));
        for (std::size_t j = 0; j < mu_cols.size(); ++j) {
            beta(static_cast<Eigen::Index>(j)) = est.at("beta" + std::to_string(j)).get<double>();
        }
        for (std::size_t j = 0; j < alpha_cols.size(); ++j) {
            gamma(static_cast<Eigen::Index>(j)) = est.at("gamma" + std::to_string(j)).get<double>();
        }
        out.law = std::make_unique<RegressionLaw>(RegressionModel(
            kind, build_design(mu_cols, data), build_design(alpha_cols, data), beta, gamma));
        return out;
    } catch (const json::exception& e) {
        throw DataError(std::string("fit file: ") + e.what());
    }
}

// ---- subcommands ----------------------------------------------------------

struct SimulateArgs {
    std::string model = "geo-mgwi";
    double mu = 2.0, alpha = 1.0, pi = 0.0, eta = 0.5;
    std::string beta, gamma, mu_terms, alpha_terms;
    std::size_t n = 100;
    std::uint64_t seed = 1;
    std::string out;
};

int cmd_simulate(const SimulateArgs& a) {
    json config = {{"command", "simulate"}, {"model", a.model}, {"n", a.n}, {"seed", a.seed}};
    Rng rng(a.seed);
    std::optional<CountSeries> series;
    if (a.n == 0) throw std::invalid_argument("--n must be at least 1");
    if (a.model == "geo-mgwi") {
        config["mu"] = a.mu;
        config["alpha"] = a.alpha;
        series = simulate(GeoMgwiModel(a.mu, a.alpha), a.n, rng);
    } else if (a.model == "zmg-mgwi") {
        config["mu"] = a.mu;
        config["pi"] = a.pi;
        config["alpha"] = a.alpha;
        config["eta"] = a.eta;
        series = simulate_zmg_mgwi(ZmgMgwiModel(a.mu, a.pi, a.alpha, a.eta), a.n, rng);
    } else if (a.model == "mgwi-reg" || a.model == "pinar") {
        const auto mu_terms = parse_covariates(a.mu_terms);
        const auto alpha_terms = parse_covariates(a.alpha_terms);
        const Eigen::VectorXd beta = parse_vector(a.beta, "--beta");
        const Eigen::VectorXd gamma = parse_vector(a.gamma, "--gamma");
        config["beta"] = vector_json(beta);
        config["gamma"] = vector_json(gamma);
        config["mu_terms"] = a.mu_terms;
        config["alpha_terms"] = a.alpha_terms;
        const RegressionModel m(a.model == "pinar" ? RegressionKind::Pinar : RegressionKind::Mgwi,
                                design_with_intercept(mu_terms, a.n), design_with_intercept(alpha_terms, a.n),
                                beta, gamma);
        series = a.model == "pinar" ? simulate_pinar(m, rng) : simulate_nonstat(m, rng);
    } else {
        throw std::invalid_argument("unknown model '" + a.model + "' (geo-mgwi, zmg-mgwi, mgwi-reg, pinar)");
    }
    const std::string hash = config_hash(config);
    std::ostringstream csv;
    write_series_csv(csv, *series, true, provenance_comments(a.seed, hash));
    write_text(a.out, csv.str());
    if (!a.out.empty() && a.out != "-") {
        json sidecar = config;
        sidecar["config_hash"] = hash;
        write_text(a.out + ".json", sidecar.dump(2) + "\n");
    }
    return 0;
}

struct FitArgs {
    std::string data = "hansen";
    std::string model = "geo-mgwi";
    std::string method = "cls";
    std::string trend;
    std::string mu_covariates, alpha_covariates;
    int bootstrap = 0;
    std::string bootstrap_model;
    std::uint64_t seed = 1;
    int jobs = 0;
    bool conditional = false;
    std::string out;
};

int cmd_fit(const FitArgs& a) {
    const Method method = parse_method(a.method);
    const SeriesTable data = load_data(a.data);
    if (data.series.size() < 2) throw DataError("fitting needs a series of length >= 2");
    const int jobs = a.jobs > 0 ? a.jobs : default_jobs();

    json config = {{"command", "fit"}, {"data", a.data}, {"model", a.model}, {"method", a.method},
                   {"bootstrap", a.bootstrap}, {"seed", a.seed}};
    json out = json::object();
    out["model"] = a.model;
    out["data"] = a.data;
    out["n"] = data.series.size();

    FitResult fit;
    std::optional<BootstrapResult> boot;
    const Rng rng(a.seed);
    if (a.model == "geo-mgwi") {
        FitOptions opts;
        opts.full_likelihood = !a.conditional;
        fit = fit_stationary(data.series, method, opts);
        config["conditional"] = a.conditional;
        if (a.bootstrap > 0 && fit.converged) {
            const std::string bm = a.bootstrap_model.empty() ? "geo" : a.bootstrap_model;
            if (bm != "geo" && bm != "poisson") throw std::invalid_argument("--bootstrap-model must be geo or poisson");
            config["bootstrap_model"] = bm;
            boot = bootstrap_se(data.series, fit, bm == "geo" ? BootstrapModel::GeoMgwi : BootstrapModel::PoissonInnovationMgwi,
                                a.bootstrap, rng, jobs);
        }
    } else if (a.model == "mgwi-reg" || a.model == "pinar") {
        const bool pinar = a.model == "pinar";
        if (pinar && method != Method::Cls) throw std::invalid_argument("the PINAR baseline is fitted by CLS only");
        const auto mu_cols = design_columns(a.mu_covariates, a.trend);
        const auto alpha_cols = design_columns(a.alpha_covariates, a.trend);
        config["mu_covariates"] = mu_cols;
        config["alpha_covariates"] = alpha_cols;
        out["mu_covariates"] = mu_cols;
        out["alpha_covariates"] = alpha_cols;
        const RegressionModel skeleton(pinar ? RegressionKind::Pinar : RegressionKind::Mgwi,
                                       build_design(mu_cols, data), build_design(alpha_cols, data));
        fit = pinar ? fit_pinar_cls(data.series, skeleton) : fit_nonstat(data.series, skeleton, method);
        if (a.bootstrap > 0 && fit.converged) {
            std::string bm = a.bootstrap_model.empty() ? (pinar ? "pinar" : "poisson") : a.bootstrap_model;
            RegressionBootstrap gen;
            if (bm == "geo") gen = RegressionBootstrap::GeoInnovMgwi;
            else if (bm == "poisson") gen = RegressionBootstrap::PoissonInnovMgwi;
            else if (bm == "pinar") gen = RegressionBootstrap::Pinar;
            else throw std::invalid_argument("--bootstrap-model must be geo, poisson or pinar");
            config["bootstrap_model"] = bm;
            boot = bootstrap_se_nonstat(data.series, skeleton.with_coefficients(fit.estimates), method, gen,
                                        a.bootstrap, rng, jobs);
        }
    } else {
        throw std::invalid_argument("unknown model '" + a.model + "' (geo-mgwi, mgwi-reg, pinar)");
    }

    out["method"] = std::string(to_string(fit.method));
    out["estimates"] = named_json(fit.names, fit.estimates);
    json se = json::object();
    if (fit.std_errors) se["hessian"] = named_json(fit.names, *fit.std_errors);
    if (boot) {
        se["bootstrap"] = named_json(fit.names, boot->std_errors);
        se["bootstrap_replications"] = boot->replications;
        se["bootstrap_dropped"] = boot->dropped;
    }
    out["std_errors"] = se;
    out[fit.method == Method::Cls ? "cls_objective" : "loglik"] = fit.objective;
    out["sspe"] = fit.sspe;
    out["converged"] = fit.converged;
    out["iterations"] = fit.iterations;
    out["gradient_norm"] = fit.gradient_norm;
    out["tolerance"] = fit.tolerance;
    out["algorithm"] = fit.algorithm;
    out["diagnostics"] = fit.diagnostics;
    out["seed"] = a.seed;
    out["config_hash"] = config_hash(config);
    write_text(a.out, out.dump(2) + "\n");
    if (!fit.converged) throw ConvergenceFailure("optimizer did not converge; see diagnostics in the output");
    return 0;
}

struct PredictArgs {
    std::string data = "hansen";
    std::string fit_path;
    std::string out;
};

int cmd_predict(const PredictArgs& a) {
    const SeriesTable data = load_data(a.data);
    const json fit = read_json(a.fit_path);
    const FittedModel model = model_from_fit(fit, data);
    const auto records = predict(*model.law, data.series);
    json config = {{"command", "predict"}, {"data", a.data}, {"fit", fit.value("config_hash", "")}};
    std::ostringstream csv;
    csv << "# config_hash=" << config_hash(config) << "\n";
    csv << "t,observed,predicted_mean,predicted_var\n";
    csv.precision(10);
    for (const auto& r : records) {
        csv << r.t << ',' << r.observed << ',' << r.predicted_mean << ',';
        if (r.predicted_var) csv << *r.predicted_var;
        csv << '\n';
    }
    write_text(a.out, csv.str());
    return 0;
}

struct DiagnoseArgs {
    std::string data = "hansen";
    std::string fit_path;
    std::string out_dir = ".";
    std::size_t max_lag = 20;
    std::uint64_t seed = 1;
};

json summary_json(const Summary& s) {
    return {{"n", s.n},         {"minimum", s.minimum},   {"maximum", s.maximum},
            {"mean", s.mean},   {"median", s.median},     {"variance", s.variance},
            {"skewness", s.skewness}, {"kurtosis", s.kurtosis}};
}

int cmd_diagnose(const DiagnoseArgs& a) {
    const SeriesTable data = load_data(a.data);
    const json fit = read_json(a.fit_path);
    const FittedModel model = model_from_fit(fit, data);
    Rng rng(a.seed);
    const ResidualSeries pearson = pearson_residuals(data.series, *model.law);
    const ResidualSeries pseudo = pseudo_residuals(data.series, *model.law, rng);
    const auto records = predict(*model.law, data.series);

    json config = {{"command", "diagnose"}, {"data", a.data}, {"fit", fit.value("config_hash", "")},
                   {"max_lag", a.max_lag}, {"seed", a.seed}};
    const std::string hash = config_hash(config);
    const std::filesystem::path dir(a.out_dir);
    std::filesystem::create_directories(dir);

    std::ostringstream res;
    res.precision(10);
    res << "# seed=" << a.seed << "\n# config_hash=" << hash << "\nt,observed,predicted_mean,pearson,pseudo\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        res << records[i].t << ',' << records[i].observed << ',' << records[i].predicted_mean << ','
            << pearson.values[i] << ',' << pseudo.values[i] << '\n';
    }
    write_text((dir / "residuals.csv").string(), res.str());

    std::ostringstream acf;
    acf.precision(10);
    acf << "# config_hash=" << hash << "\nseries,lag,acf,pacf\n";
    auto emit = [&](const char* name, std::span<const double> v) {
        const std::size_t lag = std::min(a.max_lag, v.size() - 1);
        const AcfPacf r = sample_acf_pacf(v, lag);
        for (std::size_t k = 0; k <= lag; ++k) {
            acf << name << ',' << k << ',' << r.acf[k] << ',';
            if (k > 0) acf << r.pacf[k - 1];
            acf << '\n';
        }
    };
    const std::vector<double> xs = data.series.as_doubles();
    emit("data", xs);
    emit("pearson", pearson.values);
    emit("pseudo", pseudo.values);
    write_text((dir / "acf.csv").string(), acf.str());

    json summary = {{"data", summary_json(describe(data.series))},
                    {"pearson", summary_json(describe(pearson.values))},
                    {"pseudo", summary_json(describe(pseudo.values))},
                    {"sspe", sspe(data.series, records)},
                    {"kurtosis_convention", "non-excess"},
                    {"seed", a.seed},
                    {"config_hash", hash}};
    write_text((dir / "summary.json").string(), summary.dump(2) + "\n");
    return 0;
}

int cmd_describe(const std::string& data_spec, const std::string& out) {
    const SeriesTable data = load_data(data_spec);
    json j = summary_json(describe(data.series));
    j["kurtosis_convention"] = "non-excess";
    j["data"] = data_spec;
    write_text(out, j.dump(2) + "\n");
    return 0;
}

struct McArgs {
    std::vector<std::string> scenarios;
    std::string scenario_file;
    std::vector<std::size_t> sizes;
    int reps = 0;
    std::optional<std::uint64_t> seed;
    bool paper_scale = false;
    int jobs = 0;
    std::string format = "markdown";
    std::string out;
    std::string failures_out;
};

int cmd_mc(const McArgs& a) {
    std::vector<Scenario> list;
    const Scale scale = a.paper_scale ? Scale::Paper : Scale::Desk;
    for (const auto& id : a.scenarios) list.push_back(builtin_scenario(id, scale));
    if (!a.scenario_file.empty()) {
        std::ifstream in(a.scenario_file);
        if (!in) throw DataError("cannot open " + a.scenario_file);
        std::stringstream ss;
        ss << in.rdbuf();
        for (auto& s : parse_scenarios(ss.str())) list.push_back(std::move(s));
    }
    if (list.empty()) throw std::invalid_argument("give --scenario <id> or --scenario-file <path>");
    json config = {{"command", "mc"}, {"paper_scale", a.paper_scale}};
    for (auto& s : list) {
        if (!a.sizes.empty()) s.sample_sizes = a.sizes;
        if (a.reps > 0) s.replications = a.reps;
        if (a.seed) s.seed = *a.seed;
        config["scenarios"].push_back({{"id", s.id}, {"n", s.sample_sizes}, {"reps", s.replications}, {"seed", s.seed}});
    }
    const StudyResult r = run_study(list, a.jobs > 0 ? a.jobs : default_jobs());
    const std::string hash = config_hash(config);
    std::string text;
    if (a.format == "csv") {
        text = "# config_hash=" + hash + "\n" + emit_csv(r.table);
    } else if (a.format == "markdown") {
        text = "<!-- config_hash=" + hash + " -->\n" + emit_markdown(r.table);
    } else {
        throw std::invalid_argument("--format must be csv or markdown");
    }
    write_text(a.out, text);
    for (const auto& f : r.failures) {
        std::cerr << "fit failure: scenario " << f.scenario << " n=" << f.n << " " << to_string(f.method)
                  << " replication " << f.replication << ": " << f.reason << "\n";
    }
    if (!a.failures_out.empty()) {
        std::ostringstream fs;
        fs << "scenario,n,method,replication,reason\n";
        for (const auto& f : r.failures) {
            fs << f.scenario << ',' << f.n << ',' << to_string(f.method) << ',' << f.replication << ",\""
               << f.reason << "\"\n";
        }
        write_text(a.failures_out, fs.str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MGWI count time series: simulation, estimation, diagnostics"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* s = app.add_subcommand("simulate", "Simulate a series to CSV");
    s->add_option("--model", sim.model, "geo-mgwi, zmg-mgwi, mgwi-reg or pinar")->capture_default_str();
    s->add_option("--mu", sim.mu)->capture_default_str();
    s->add_option("--alpha", sim.alpha)->capture_default_str();
    s->add_option("--pi", sim.pi, "zmg-mgwi marginal zero modification")->capture_default_str();
    s->add_option("--eta", sim.eta, "zmg-mgwi thinning parameter")->capture_default_str();
    s->add_option("--beta", sim.beta, "comma-separated, intercept first");
    s->add_option("--gamma", sim.gamma, "comma-separated, intercept first");
    s->add_option("--mu-terms", sim.mu_terms, "covariate recipes after the intercept, e.g. t-over-n,cos-12");
    s->add_option("--alpha-terms", sim.alpha_terms);
    s->add_option("--n", sim.n)->capture_default_str();
    s->add_option("--seed", sim.seed)->capture_default_str();
    s->add_option("--out", sim.out, "output CSV (stdout when omitted); a .json sidecar is written next to it");

    FitArgs fit;
    auto* f = app.add_subcommand("fit", "Fit a model and print JSON");
    f->add_option("--data", fit.data, "hansen or csv:<path>")->capture_default_str();
    f->add_option("--model", fit.model, "geo-mgwi, mgwi-reg or pinar")->capture_default_str();
    f->add_option("--method", fit.method, "cls or mle")->capture_default_str();
    f->add_option("--trend", fit.trend, "recipes added after the intercept in both links");
    f->add_option("--mu-covariates", fit.mu_covariates, "full column list for mu_t (recipes or CSV columns)");
    f->add_option("--alpha-covariates", fit.alpha_covariates, "full column list for alpha_t");
    f->add_option("--bootstrap", fit.bootstrap, "parametric bootstrap replications")->capture_default_str();
    f->add_option("--bootstrap-model", fit.bootstrap_model, "geo, poisson or pinar");
    f->add_option("--seed", fit.seed)->capture_default_str();
    f->add_option("--jobs", fit.jobs, "worker threads (MGWI_JOBS or all cores by default)");
    f->add_flag("--conditional", fit.conditional, "geo-mgwi MLE conditional on x_1");
    f->add_option("--out", fit.out);

    PredictArgs pred;
    auto* p = app.add_subcommand("predict", "One-step predictions from a fit JSON");
    p->add_option("--data", pred.data)->capture_default_str();
    p->add_option("--fit", pred.fit_path)->required();
    p->add_option("--out", pred.out);

    DiagnoseArgs diag;
    auto* d = app.add_subcommand("diagnose", "Residuals, ACF/PACF and summaries from a fit JSON");
    d->add_option("--data", diag.data)->capture_default_str();
    d->add_option("--fit", diag.fit_path)->required();
    d->add_option("--out-dir", diag.out_dir)->capture_default_str();
    d->add_option("--max-lag", diag.max_lag)->capture_default_str();
    d->add_option("--seed", diag.seed)->capture_default_str();

    std::string describe_data = "hansen";
    std::string describe_out;
    auto* ds = app.add_subcommand("describe", "Descriptive statistics as JSON");
    ds->add_option("--data", describe_data)->capture_default_str();
    ds->add_option("--out", describe_out);

    McArgs mc;
    std::uint64_t mc_seed = 0;
    auto* m = app.add_subcommand("mc", "Monte Carlo study");
    m->add_option("--scenario", mc.scenarios, "built-in id I..VI (repeatable)");
    m->add_option("--scenario-file", mc.scenario_file);
    m->add_option("--n", mc.sizes, "override sample sizes");
    m->add_option("--reps", mc.reps, "override replications");
    auto* seed_opt = m->add_option("--seed", mc_seed, "override scenario seeds");
    m->add_flag("--paper-scale", mc.paper_scale, "1000 replications (I-IV) or 500 (V-VI), n = 100..1000");
    m->add_option("--jobs", mc.jobs);
    m->add_option("--format", mc.format, "csv or markdown")->capture_default_str();
    m->add_option("--out", mc.out);
    m->add_option("--failures-out", mc.failures_out, "CSV of failed replications");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*s) return cmd_simulate(sim);
        if (*f) return cmd_fit(fit);
        if (*p) return cmd_predict(pred);
        if (*d) return cmd_diagnose(diag);
        if (*ds) return cmd_describe(describe_data, describe_out);
        if (*m) {
            if (*seed_opt) mc.seed = mc_seed;
            return cmd_mc(mc);
        }
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const ConvergenceFailure& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}

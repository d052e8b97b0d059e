#include "mgwi/mc_harness.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "mgwi/csv.hpp"
#include "mgwi/estimation.hpp"
#include "mgwi/geo_mgwi.hpp"
#include "mgwi/parallel.hpp"
#include "mgwi/regression.hpp"
#include "mgwi/rng.hpp"

namespace mgwi {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t end = std::min(s.find(',', start), s.size());
        std::string item = trim(s.substr(start, end - start));
        if (!item.empty()) out.push_back(std::move(item));
        start = end + 1;
    }
    return out;
}

double to_double(const std::string& s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw std::invalid_argument("'" + s + "' is not a number");
    return v;
}

std::uint64_t to_unsigned(const std::string& s) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::invalid_argument("'" + s + "' is not a nonnegative integer");
    }
    return v;
}

Eigen::VectorXd to_vector(const std::string& s) {
    const auto items = split_list(s);
    Eigen::VectorXd v(static_cast<Eigen::Index>(items.size()));
    for (std::size_t i = 0; i < items.size(); ++i) v(static_cast<Eigen::Index>(i)) = to_double(items[i]);
    return v;
}

Scenario stationary(std::string id, double mu, double alpha, Scale scale) {
    Scenario s;
    s.id = std::move(id);
    s.kind = ScenarioKind::Stationary;
    s.truth = Eigen::Vector2d(mu, alpha);
    s.replications = scale == Scale::Paper ? 1000 : 200;
    s.sample_sizes = scale == Scale::Paper ? std::vector<std::size_t>{100, 200, 500, 1000}
                                           : std::vector<std::size_t>{100, 500};
    return s;
}

Scenario regression(std::string id, Eigen::VectorXd truth, Scale scale) {
    Scenario s;
    s.id = std::move(id);
    s.kind = ScenarioKind::Regression;
    s.truth = std::move(truth);
    s.mu_terms = {Covariate::TrendOverN, Covariate::Cos12};
    s.alpha_terms = {Covariate::TrendOverN};
    s.replications = scale == Scale::Paper ? 500 : 200;
    s.sample_sizes = scale == Scale::Paper ? std::vector<std::size_t>{100, 200, 500, 1000}
                                           : std::vector<std::size_t>{100, 500};
    return s;
}

RegressionModel regression_model(const Scenario& s, std::size_t n) {
    const Eigen::Index p = static_cast<Eigen::Index>(s.mu_terms.size() + 1);
    const Eigen::Index q = static_cast<Eigen::Index>(s.alpha_terms.size() + 1);
    return RegressionModel(RegressionKind::Mgwi, design_with_intercept(s.mu_terms, n),
                           design_with_intercept(s.alpha_terms, n), s.truth.head(p), s.truth.tail(q));
}

std::string csv_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::vector<std::string> Scenario::parameter_names() const {
    if (kind == ScenarioKind::Stationary) return {"mu", "alpha"};
    std::vector<std::string> names;
    for (std::size_t j = 0; j <= mu_terms.size(); ++j) names.push_back("beta" + std::to_string(j));
    for (std::size_t j = 0; j <= alpha_terms.size(); ++j) names.push_back("gamma" + std::to_string(j));
    return names;
}

void Scenario::validate() const {
    if (id.empty()) throw std::invalid_argument("scenario id is empty");
    if (replications < 1) throw std::invalid_argument("scenario " + id + ": replications must be >= 1");
    if (sample_sizes.empty()) throw std::invalid_argument("scenario " + id + ": no sample sizes");
    for (std::size_t n : sample_sizes) {
        if (n < 10) throw std::invalid_argument("scenario " + id + ": sample sizes must be >= 10");
    }
    if (methods.empty()) throw std::invalid_argument("scenario " + id + ": no methods");
    if (truth.size() != static_cast<Eigen::Index>(parameter_names().size())) {
        throw std::invalid_argument("scenario " + id + ": expected " + std::to_string(parameter_names().size()) +
                                    " true parameter values");
    }
    if (kind == ScenarioKind::Stationary && !(truth(0) > 0.0 && truth(1) > 0.0)) {
        throw std::invalid_argument("scenario " + id + ": mu and alpha must be positive");
    }
}

std::vector<std::string> builtin_scenario_ids() { return {"I", "II", "III", "IV", "V", "VI"}; }

Scenario builtin_scenario(std::string_view id, Scale scale) {
    if (id == "I") return stationary("I", 2.0, 1.0, scale);
    if (id == "II") return stationary("II", 1.2, 0.5, scale);
    if (id == "III") return stationary("III", 0.5, 1.5, scale);
    if (id == "IV") return stationary("IV", 0.3, 0.5, scale);
    Eigen::VectorXd truth(5);
    if (id == "V") {
        truth << 2.0, 1.0, 0.7, 2.0, 1.0;
        return regression("V", truth, scale);
    }
    if (id == "VI") {
        truth << 3.0, 1.0, 0.5, 3.0, 2.0;
        return regression("VI", truth, scale);
    }
    throw std::invalid_argument("unknown scenario '" + std::string(id) + "' (valid: I, II, III, IV, V, VI)");
}

std::vector<Scenario> parse_scenarios(std::string_view text) {
    struct Pending {
        std::map<std::string, std::string> kv;
        std::size_t line;
    };
    std::vector<Pending> blocks;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("scenario file line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key == "id") blocks.push_back({{}, line_no});
        if (blocks.empty()) {
            throw std::invalid_argument("scenario file line " + std::to_string(line_no) + ": 'id' must come first");
        }
        if (!blocks.back().kv.emplace(key, value).second) {
            throw std::invalid_argument("scenario file line " + std::to_string(line_no) + ": duplicate key " + key);
        }
    }

    static const std::vector<std::string> known{"id",          "model",        "mu",      "alpha",
                                                "beta",        "gamma",        "mu_terms", "alpha_terms",
                                                "sample_sizes", "replications", "methods", "seed"};
    std::vector<Scenario> out;
    for (const Pending& b : blocks) {
        auto& kv = b.kv;
        for (const auto& [k, v] : kv) {
            if (std::find(known.begin(), known.end(), k) == known.end()) {
                throw std::invalid_argument("scenario " + kv.at("id") + ": unknown key " + k);
            }
        }
        auto get = [&kv](const std::string& k) -> std::optional<std::string> {
            const auto it = kv.find(k);
            return it == kv.end() ? std::nullopt : std::optional<std::string>(it->second);
        };
        auto require = [&](const std::string& k) {
            const auto v = get(k);
            if (!v) throw std::invalid_argument("scenario " + kv.at("id") + ": missing key " + k);
            return *v;
        };
        Scenario s;
        s.id = kv.at("id");
        const std::string model = get("model").value_or("geo-mgwi");
        if (model == "geo-mgwi") {
            s.kind = ScenarioKind::Stationary;
            s.truth = Eigen::Vector2d(to_double(require("mu")), to_double(require("alpha")));
        } else if (model == "mgwi-reg") {
            s.kind = ScenarioKind::Regression;
            s.mu_terms = parse_covariates(get("mu_terms").value_or(""));
            s.alpha_terms = parse_covariates(get("alpha_terms").value_or(""));
            const Eigen::VectorXd beta = to_vector(require("beta"));
            const Eigen::VectorXd gamma = to_vector(require("gamma"));
            s.truth.resize(beta.size() + gamma.size());
            s.truth << beta, gamma;
        } else {
            throw std::invalid_argument("scenario " + s.id + ": model must be geo-mgwi or mgwi-reg");
        }
        s.sample_sizes.clear();
        for (const auto& n : split_list(require("sample_sizes"))) s.sample_sizes.push_back(to_unsigned(n));
        s.replications = static_cast<int>(to_unsigned(require("replications")));
        if (const auto m = get("methods")) {
            s.methods.clear();
            for (const auto& name : split_list(*m)) s.methods.push_back(parse_method(name));
        }
        if (const auto seed = get("seed")) s.seed = to_unsigned(*seed);
        s.validate();
        out.push_back(std::move(s));
    }
    return out;
}

const McCell& McTable::cell(std::string_view scenario, std::size_t n, Method method,
                            std::string_view parameter) const {
    for (const McCell& c : cells) {
        if (c.scenario == scenario && c.n == n && c.method == method && c.parameter == parameter) return c;
    }
    throw std::out_of_range("no table cell for scenario " + std::string(scenario) + ", n = " + std::to_string(n));
}

StudyResult run_study(const std::vector<Scenario>& scenarios, int jobs) {
    StudyResult result;
    for (const Scenario& s : scenarios) {
        s.validate();
        const std::vector<std::string> names = s.parameter_names();
        const std::uint64_t id_hash = fnv1a64(s.id.data(), s.id.size());
        const Rng root(s.seed);
        for (std::size_t n : s.sample_sizes) {
            const auto reps = static_cast<std::size_t>(s.replications);
            // estimates[k][method]
            std::vector<std::vector<std::optional<Eigen::VectorXd>>> estimates(
                reps, std::vector<std::optional<Eigen::VectorXd>>(s.methods.size()));
            std::vector<std::vector<std::string>> reasons(reps, std::vector<std::string>(s.methods.size()));
            parallel_for(reps, jobs, [&](std::size_t k) {
                Rng rng = root.child({id_hash, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k)});
                for (std::size_t m = 0; m < s.methods.size(); ++m) {
                    try {
                        FitResult fit;
                        if (s.kind == ScenarioKind::Stationary) {
                            Rng sim_rng = rng.child(0);
                            const CountSeries series = simulate(GeoMgwiModel(s.truth(0), s.truth(1)), n, sim_rng);
                            FitOptions opts;
                            opts.compute_se = false;
                            fit = fit_stationary(series, s.methods[m], opts);
                        } else {
                            Rng sim_rng = rng.child(0);
                            const RegressionModel truth = regression_model(s, n);
                            const CountSeries series = simulate_nonstat(truth, sim_rng);
                            RegressionFitOptions opts;
                            opts.compute_se = false;
                            fit = fit_nonstat(series, truth, s.methods[m], opts);
                        }
                        if (fit.converged && fit.estimates.allFinite()) {
                            estimates[k][m] = fit.estimates;
                        } else {
                            reasons[k][m] = fit.diagnostics.empty() ? "not converged" : fit.diagnostics.back();
                        }
                    } catch (const std::exception& e) {
                        reasons[k][m] = e.what();
                    }
                }
            });
            for (std::size_t m = 0; m < s.methods.size(); ++m) {
                for (std::size_t p = 0; p < names.size(); ++p) {
                    McCell c;
                    c.scenario = s.id;
                    c.n = n;
                    c.method = s.methods[m];
                    c.parameter = names[p];
                    c.truth = s.truth(static_cast<Eigen::Index>(p));
                    double sum = 0.0;
                    double sq = 0.0;
                    for (std::size_t k = 0; k < reps; ++k) {
                        if (!estimates[k][m]) {
                            ++c.failures;
                            continue;
                        }
                        const double v = (*estimates[k][m])(static_cast<Eigen::Index>(p));
                        sum += v;
                        sq += (v - c.truth) * (v - c.truth);
                        ++c.replications;
                    }
                    const double nan = std::numeric_limits<double>::quiet_NaN();
                    c.mean = c.replications > 0 ? sum / c.replications : nan;
                    c.rmse = c.replications > 0 ? std::sqrt(sq / c.replications) : nan;
                    result.table.cells.push_back(c);
                }
                for (std::size_t k = 0; k < reps; ++k) {
                    if (!estimates[k][m]) {
                        result.failures.push_back({s.id, n, s.methods[m], static_cast<int>(k), reasons[k][m]});
                    }
                }
            }
        }
    }
    return result;
}

std::string format_mean_rmse(double mean, double rmse, int digits) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.*f (%.*f)", digits, mean, digits, rmse);
    return buf;
}

std::string emit_csv(const McTable& table) {
    std::ostringstream out;
    out << "scenario,n,method,parameter,truth,mean,rmse,replications,failures\n";
    for (const McCell& c : table.cells) {
        out << c.scenario << ',' << c.n << ',' << to_string(c.method) << ',' << c.parameter << ','
            << csv_number(c.truth) << ',' << csv_number(c.mean) << ',' << csv_number(c.rmse) << ','
            << c.replications << ',' << c.failures << '\n';
    }
    return out.str();
}

McTable parse_csv_table(std::string_view text) {
    McTable table;
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || trim(line) != "scenario,n,method,parameter,truth,mean,rmse,replications,failures") {
        throw std::invalid_argument("Monte Carlo table CSV has an unexpected header");
    }
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto f = split_csv_record(line);
        if (f.size() != 9) throw std::invalid_argument("Monte Carlo table row has " + std::to_string(f.size()) + " fields");
        McCell c;
        c.scenario = f[0];
        c.n = to_unsigned(f[1]);
        c.method = parse_method(f[2]);
        c.parameter = f[3];
        auto num = [](const std::string& s) {
            return s == "nan" || s == "-nan" ? std::numeric_limits<double>::quiet_NaN() : to_double(s);
        };
        c.truth = num(f[4]);
        c.mean = num(f[5]);
        c.rmse = num(f[6]);
        c.replications = static_cast<int>(to_unsigned(f[7]));
        c.failures = static_cast<int>(to_unsigned(f[8]));
        table.cells.push_back(c);
    }
    return table;
}

std::string emit_markdown(const McTable& table) {
    // Column order: methods then parameters in first-seen order.
    std::vector<std::pair<Method, std::string>> columns;
    std::vector<std::pair<std::string, std::size_t>> rows;
    for (const McCell& c : table.cells) {
        const std::pair<Method, std::string> col{c.method, c.parameter};
        if (std::find(columns.begin(), columns.end(), col) == columns.end()) columns.push_back(col);
        const std::pair<std::string, std::size_t> r{c.scenario, c.n};
        if (std::find(rows.begin(), rows.end(), r) == rows.end()) rows.push_back(r);
    }
    std::ostringstream out;
    out << "| Scenario | n |";
    for (const auto& [m, p] : columns) out << ' ' << (m == Method::Mle ? "MLE " : "CLS ") << p << " |";
    out << " failures |\n|---|---|";
    for (std::size_t i = 0; i < columns.size(); ++i) out << "---|";
    out << "---|\n";
    for (const auto& [scenario, n] : rows) {
        out << "| " << scenario << " | " << n << " |";
        int failures = 0;
        for (const auto& [m, p] : columns) {
            const auto it = std::find_if(table.cells.begin(), table.cells.end(), [&](const McCell& c) {
                return c.scenario == scenario && c.n == n && c.method == m && c.parameter == p;
            });
            if (it == table.cells.end()) {
                out << "  |";
            } else {
                out << ' ' << format_mean_rmse(it->mean, it->rmse) << " |";
                failures = std::max(failures, it->failures);
            }
        }
        out << ' ' << failures << " |\n";
    }
    return out.str();
}

}  // namespace mgwi

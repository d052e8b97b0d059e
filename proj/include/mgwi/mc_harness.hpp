#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "mgwi/covariates.hpp"
#include "mgwi/fit_result.hpp"

namespace mgwi {

enum class ScenarioKind { Stationary, Regression };
enum class Scale { Desk, Paper };

struct Scenario {
    std::string id;
    ScenarioKind kind = ScenarioKind::Stationary;
    /// Stationary: (mu, alpha). Regression: beta followed by gamma.
    Eigen::VectorXd truth;
    /// Regression only: generators for the non-intercept columns of W and V.
    std::vector<Covariate> mu_terms;
    std::vector<Covariate> alpha_terms;
    std::vector<std::size_t> sample_sizes;
    int replications = 1;
    std::vector<Method> methods{Method::Mle, Method::Cls};
    std::uint64_t seed = 1;

    [[nodiscard]] std::vector<std::string> parameter_names() const;
    /// Throws std::invalid_argument when an invariant fails.
    void validate() const;
};

/// "I" .. "VI".
[[nodiscard]] std::vector<std::string> builtin_scenario_ids();
/// Throws std::invalid_argument listing the valid ids.
[[nodiscard]] Scenario builtin_scenario(std::string_view id, Scale scale = Scale::Desk);

/**
 * Key = value lines, '#' comments. Each `id` line starts a new scenario.
 * Keys: id, model (geo-mgwi | mgwi-reg), mu, alpha, beta, gamma, mu_terms,
 * alpha_terms, sample_sizes, replications, methods, seed. Lists are
 * comma-separated.
 */
[[nodiscard]] std::vector<Scenario> parse_scenarios(std::string_view text);

struct McCell {
    std::string scenario;
    std::size_t n = 0;
    Method method = Method::Mle;
    std::string parameter;
    double truth = 0.0;
    double mean = 0.0;
    double rmse = 0.0;
    /// Replications entering mean and RMSE.
    int replications = 0;
    int failures = 0;
};

struct McTable {
    std::vector<McCell> cells;

    /// Throws std::out_of_range when absent.
    [[nodiscard]] const McCell& cell(std::string_view scenario, std::size_t n, Method method,
                                     std::string_view parameter) const;
};

struct FailureRecord {
    std::string scenario;
    std::size_t n;
    Method method;
    int replication;
    std::string reason;
};

struct StudyResult {
    McTable table;
    std::vector<FailureRecord> failures;
};

/// Replication k of (scenario, n) draws from the stream derived from
/// (seed, hash(id), n, k); results do not depend on `jobs`.
[[nodiscard]] StudyResult run_study(const std::vector<Scenario>& scenarios, int jobs = 1);

[[nodiscard]] std::string emit_csv(const McTable& table);
/// One row per (scenario, n); cells read "mean (rmse)".
[[nodiscard]] std::string emit_markdown(const McTable& table);
/// Inverse of emit_csv.
[[nodiscard]] McTable parse_csv_table(std::string_view text);
/// "1.998 (0.088)".
[[nodiscard]] std::string format_mean_rmse(double mean, double rmse, int digits = 3);

}  // namespace mgwi

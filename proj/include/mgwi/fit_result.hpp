#pragma once

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace mgwi {

enum class Method { Cls, Mle };

[[nodiscard]] std::string_view to_string(Method m) noexcept;
/// Accepts "cls" or "mle"; throws std::invalid_argument otherwise.
[[nodiscard]] Method parse_method(std::string_view text);

struct FitResult {
    Method method = Method::Cls;
    std::vector<std::string> names;
    Eigen::VectorXd estimates;
    std::optional<Eigen::VectorXd> std_errors;
    /// Q_n for CLS, the log-likelihood for MLE.
    double objective = std::numeric_limits<double>::quiet_NaN();
    double sspe = std::numeric_limits<double>::quiet_NaN();
    bool converged = false;
    int iterations = 0;
    double gradient_norm = std::numeric_limits<double>::quiet_NaN();
    double tolerance = std::numeric_limits<double>::quiet_NaN();
    std::string algorithm;
    std::vector<std::string> diagnostics;

    /// Throws std::out_of_range for an unknown name.
    [[nodiscard]] double estimate(std::string_view name) const;
};

/// Standard errors from a parametric bootstrap.
struct BootstrapResult {
    Eigen::VectorXd std_errors;
    int replications = 0;
    int dropped = 0;
};

/**
 * Column standard deviations (divisor B-1) over the converged replications.
 * Throws std::runtime_error when more than 20% of them are missing.
 */
[[nodiscard]] BootstrapResult summarize_bootstrap(
    const std::vector<std::optional<Eigen::VectorXd>>& draws, Eigen::Index dim);

}  // namespace mgwi

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace mgwi {

/// Built-in covariate generators; row i of a design matrix is time t = i + 1.
enum class Covariate { Intercept, TrendOverN, TrendOver252, Cos12 };

/// "intercept", "t-over-n", "t-over-252", "cos-12".
[[nodiscard]] std::string_view to_string(Covariate c) noexcept;
/// Throws std::invalid_argument listing the valid names.
[[nodiscard]] Covariate parse_covariate(std::string_view name);
/// Comma-separated list of recipe names.
[[nodiscard]] std::vector<Covariate> parse_covariates(std::string_view list);

/// n x recipe.size() matrix with one column per generator.
[[nodiscard]] Eigen::MatrixXd design_matrix(std::span<const Covariate> recipe, std::size_t n);

/// Intercept followed by the given generators, the usual shape for a link.
[[nodiscard]] Eigen::MatrixXd design_with_intercept(std::span<const Covariate> terms,
                                                    std::size_t n);

}  // namespace mgwi

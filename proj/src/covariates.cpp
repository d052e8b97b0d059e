#include "mgwi/covariates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mgwi {

std::string_view to_string(Covariate c) noexcept {
    switch (c) {
        case Covariate::Intercept: return "intercept";
        case Covariate::TrendOverN: return "t-over-n";
        case Covariate::TrendOver252: return "t-over-252";
        case Covariate::Cos12: return "cos-12";
    }
    return "?";
}

Covariate parse_covariate(std::string_view name) {
    for (Covariate c : {Covariate::Intercept, Covariate::TrendOverN, Covariate::TrendOver252,
                        Covariate::Cos12}) {
        if (name == to_string(c)) return c;
    }
    throw std::invalid_argument("unknown covariate recipe '" + std::string(name) +
                                "' (valid: intercept, t-over-n, t-over-252, cos-12)");
}

std::vector<Covariate> parse_covariates(std::string_view list) {
    std::vector<Covariate> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        const std::size_t end = std::min(list.find(',', start), list.size());
        std::string_view item = list.substr(start, end - start);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        if (!item.empty()) out.push_back(parse_covariate(item));
        start = end + 1;
    }
    return out;
}

Eigen::MatrixXd design_matrix(std::span<const Covariate> recipe, std::size_t n) {
    Eigen::MatrixXd X(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(recipe.size()));
    const double dn = static_cast<double>(n);
    for (std::size_t j = 0; j < recipe.size(); ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const double t = static_cast<double>(i + 1);
            double v = 1.0;
            switch (recipe[j]) {
                case Covariate::Intercept: v = 1.0; break;
                case Covariate::TrendOverN: v = t / dn; break;
                case Covariate::TrendOver252: v = t / 252.0; break;
                case Covariate::Cos12: v = std::cos(2.0 * std::numbers::pi * t / 12.0); break;
            }
            X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
        }
    }
    return X;
}

Eigen::MatrixXd design_with_intercept(std::span<const Covariate> terms, std::size_t n) {
    std::vector<Covariate> recipe{Covariate::Intercept};
    recipe.insert(recipe.end(), terms.begin(), terms.end());
    return design_matrix(recipe, n);
}

}  // namespace mgwi

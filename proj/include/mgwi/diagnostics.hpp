#pragma once

#include <vector>

#include "mgwi/count_series.hpp"
#include "mgwi/predictive.hpp"
#include "mgwi/rng.hpp"

namespace mgwi {

enum class ResidualKind { Pearson, PseudoNormal };

/// Residuals aligned to t = 2..n.
struct ResidualSeries {
    ResidualKind kind;
    std::vector<double> values;
};

/// (x_t - mean_t) / sd_t. Throws std::domain_error on a non-positive conditional variance.
[[nodiscard]] ResidualSeries pearson_residuals(const CountSeries& series, const ConditionalLaw& law);

/**
 * Randomized quantile residuals: Phi^{-1}(U_t) with U_t uniform on
 * (F(x_t - 1), F(x_t)), U_t clamped to [1e-12, 1 - 1e-12]. One uniform is
 * drawn from rng per residual.
 */
[[nodiscard]] ResidualSeries pseudo_residuals(const CountSeries& series, const ConditionalLaw& law,
                                              Rng& rng);

struct AcfPacf {
    /// acf[0] = 1, lags 0..max_lag.
    std::vector<double> acf;
    /// pacf[k - 1] is the partial autocorrelation at lag k, k = 1..max_lag.
    std::vector<double> pacf;
};

/// Divisor-n sample ACF and Durbin-Levinson PACF. Throws std::invalid_argument
/// for max_lag >= n, fewer than two values, or zero variance.
[[nodiscard]] AcfPacf sample_acf_pacf(std::span<const double> values, std::size_t max_lag);
[[nodiscard]] AcfPacf sample_acf_pacf(const CountSeries& series, std::size_t max_lag);

/// Sum of (observed - predicted_mean)^2. Throws std::invalid_argument unless
/// the records cover t = 2..n of the series.
[[nodiscard]] double sspe(const CountSeries& series, const std::vector<PredictionRecord>& predictions);

struct Summary {
    std::size_t n;
    double minimum;
    double maximum;
    double mean;
    double median;
    /// Divisor n - 1; 0 for a single observation.
    double variance;
    /// m3 / m2^{3/2} with divisor-n central moments.
    double skewness;
    /// m4 / m2^2, not excess.
    double kurtosis;
};

[[nodiscard]] Summary describe(std::span<const double> values);
[[nodiscard]] Summary describe(const CountSeries& series);

}  // namespace mgwi

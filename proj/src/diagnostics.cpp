#include "mgwi/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include <gsl/gsl_cdf.h>

namespace mgwi {

ResidualSeries pearson_residuals(const CountSeries& series, const ConditionalLaw& law) {
    ResidualSeries out{ResidualKind::Pearson, {}};
    for (const PredictionRecord& r : predict(law, series)) {
        const double var = law.variance(r.t - 1, series[r.t - 2]);
        if (!(var > 0.0)) {
            throw std::domain_error("non-positive conditional variance at t = " + std::to_string(r.t));
        }
        out.values.push_back((static_cast<double>(r.observed) - r.predicted_mean) / std::sqrt(var));
    }
    return out;
}

ResidualSeries pseudo_residuals(const CountSeries& series, const ConditionalLaw& law, Rng& rng) {
    if (const auto n = law.length(); n && *n != series.size()) {
        throw std::invalid_argument("model length does not match the series");
    }
    constexpr double lo_guard = 1e-12;
    constexpr double hi_guard = 1.0 - 1e-12;
    ResidualSeries out{ResidualKind::PseudoNormal, {}};
    out.values.reserve(series.size() - 1);
    for (std::size_t i = 1; i < series.size(); ++i) {
        const Count x_prev = series[i - 1];
        const Count x = series[i];
        const double upper = law.cdf(i, x_prev, x);
        const double lower = x > 0 ? law.cdf(i, x_prev, x - 1) : 0.0;
        const double v = rng.open_uniform();
        const double u = std::clamp(lower + v * (upper - lower), lo_guard, hi_guard);
        out.values.push_back(gsl_cdf_ugaussian_Pinv(u));
    }
    return out;
}

AcfPacf sample_acf_pacf(std::span<const double> values, std::size_t max_lag) {
    const std::size_t n = values.size();
    if (n < 2) throw std::invalid_argument("sample_acf_pacf: need at least two values");
    if (max_lag >= n) throw std::invalid_argument("sample_acf_pacf: max_lag must be below n");
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
    std::vector<double> gamma(max_lag + 1, 0.0);
    for (std::size_t k = 0; k <= max_lag; ++k) {
        double s = 0.0;
        for (std::size_t t = k; t < n; ++t) s += (values[t] - mean) * (values[t - k] - mean);
        gamma[k] = s / static_cast<double>(n);
    }
    if (!(gamma[0] > 0.0)) throw std::invalid_argument("sample_acf_pacf: series has zero variance");

    AcfPacf out;
    out.acf.resize(max_lag + 1);
    for (std::size_t k = 0; k <= max_lag; ++k) out.acf[k] = gamma[k] / gamma[0];

    // Durbin-Levinson.
    std::vector<double> phi(max_lag + 1, 0.0);
    std::vector<double> prev(max_lag + 1, 0.0);
    double v = 1.0;
    for (std::size_t k = 1; k <= max_lag; ++k) {
        double num = out.acf[k];
        for (std::size_t j = 1; j < k; ++j) num -= prev[j] * out.acf[k - j];
        const double phikk = num / v;
        phi[k] = phikk;
        for (std::size_t j = 1; j < k; ++j) phi[j] = prev[j] - phikk * prev[k - j];
        v *= 1.0 - phikk * phikk;
        out.pacf.push_back(phikk);
        prev = phi;
    }
    return out;
}

AcfPacf sample_acf_pacf(const CountSeries& series, std::size_t max_lag) {
    const std::vector<double> xs = series.as_doubles();
    return sample_acf_pacf(xs, max_lag);
}

double sspe(const CountSeries& series, const std::vector<PredictionRecord>& predictions) {
    if (predictions.size() + 1 != series.size()) {
        throw std::invalid_argument("sspe: expected " + std::to_string(series.size() - 1) +
                                    " predictions, got " + std::to_string(predictions.size()));
    }
    double s = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const PredictionRecord& r = predictions[i];
        if (r.t != i + 2 || r.observed != series[i + 1]) {
            throw std::invalid_argument("sspe: prediction " + std::to_string(i) +
                                        " is not aligned with t = " + std::to_string(i + 2));
        }
        const double e = static_cast<double>(r.observed) - r.predicted_mean;
        s += e * e;
    }
    return s;
}

Summary describe(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("describe: empty input");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double dn = static_cast<double>(n);
    Summary s{};
    s.n = n;
    s.minimum = sorted.front();
    s.maximum = sorted.back();
    s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / dn;
    s.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
    for (double x : sorted) {
        const double d = x - s.mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    s.variance = n > 1 ? m2 / (dn - 1.0) : 0.0;
    m2 /= dn;
    m3 /= dn;
    m4 /= dn;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    s.skewness = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : nan;
    s.kurtosis = m2 > 0.0 ? m4 / (m2 * m2) : nan;
    return s;
}

Summary describe(const CountSeries& series) {
    const std::vector<double> xs = series.as_doubles();
    return describe(xs);
}

}  // namespace mgwi

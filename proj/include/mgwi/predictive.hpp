#pragma once

#include <optional>
#include <vector>

#include "mgwi/count_series.hpp"
#include "mgwi/geo_mgwi.hpp"
#include "mgwi/regression.hpp"

namespace mgwi {

/// One-step conditional law of a fitted model. Row i >= 1 is time t = i + 1.
class ConditionalLaw {
public:
    virtual ~ConditionalLaw() = default;
    [[nodiscard]] virtual double mean(std::size_t i, Count x_prev) const = 0;
    [[nodiscard]] virtual double variance(std::size_t i, Count x_prev) const = 0;
    /// P(X_t <= y | X_{t-1} = x_prev); 0 for y < 0.
    [[nodiscard]] virtual double cdf(std::size_t i, Count x_prev, Count y) const = 0;
    /// Rows the law covers; empty when it is time-homogeneous.
    [[nodiscard]] virtual std::optional<std::size_t> length() const { return std::nullopt; }
    /// Whether prediction records should carry the conditional variance.
    [[nodiscard]] virtual bool reports_variance() const { return true; }
};

class StationaryLaw final : public ConditionalLaw {
public:
    explicit StationaryLaw(GeoMgwiModel model) : model_(model) {}
    [[nodiscard]] double mean(std::size_t i, Count x_prev) const override;
    [[nodiscard]] double variance(std::size_t i, Count x_prev) const override;
    [[nodiscard]] double cdf(std::size_t i, Count x_prev, Count y) const override;

private:
    GeoMgwiModel model_;
};

class RegressionLaw final : public ConditionalLaw {
public:
    explicit RegressionLaw(RegressionModel model) : model_(std::move(model)) {}
    [[nodiscard]] double mean(std::size_t i, Count x_prev) const override;
    [[nodiscard]] double variance(std::size_t i, Count x_prev) const override;
    [[nodiscard]] double cdf(std::size_t i, Count x_prev, Count y) const override;
    [[nodiscard]] std::optional<std::size_t> length() const override { return model_.length(); }
    [[nodiscard]] bool reports_variance() const override {
        return model_.kind() == RegressionKind::Mgwi;
    }

private:
    RegressionModel model_;
};

struct PredictionRecord {
    std::size_t t;
    Count observed;
    double predicted_mean;
    std::optional<double> predicted_var;
};

/// One record per t = 2..n. Throws std::invalid_argument when the law's
/// length differs from the series length.
[[nodiscard]] std::vector<PredictionRecord> predict(const ConditionalLaw& law,
                                                    const CountSeries& series);
[[nodiscard]] std::vector<PredictionRecord> predict(const GeoMgwiModel& model,
                                                    const CountSeries& series);
[[nodiscard]] std::vector<PredictionRecord> predict(const RegressionModel& model,
                                                    const CountSeries& series);

}  // namespace mgwi

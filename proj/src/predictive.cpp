#include "mgwi/predictive.hpp"

#include <stdexcept>
#include <string>

namespace mgwi {

double StationaryLaw::mean(std::size_t, Count x_prev) const { return cond_mean(model_, x_prev); }
double StationaryLaw::variance(std::size_t, Count x_prev) const { return cond_var(model_, x_prev); }
double StationaryLaw::cdf(std::size_t, Count x_prev, Count y) const {
    return transition_cdf(model_.step(), x_prev, y);
}

double RegressionLaw::mean(std::size_t i, Count x_prev) const { return nonstat_cond_mean(model_, x_prev, i); }
double RegressionLaw::variance(std::size_t i, Count x_prev) const { return nonstat_cond_var(model_, x_prev, i); }
double RegressionLaw::cdf(std::size_t i, Count x_prev, Count y) const {
    return nonstat_transition_cdf(model_, x_prev, y, i);
}

std::vector<PredictionRecord> predict(const ConditionalLaw& law, const CountSeries& series) {
    if (const auto n = law.length(); n && *n != series.size()) {
        throw std::invalid_argument("model covers " + std::to_string(*n) + " rows but the series has " +
                                    std::to_string(series.size()));
    }
    std::vector<PredictionRecord> out;
    out.reserve(series.size() > 0 ? series.size() - 1 : 0);
    for (std::size_t i = 1; i < series.size(); ++i) {
        PredictionRecord r{i + 1, series[i], law.mean(i, series[i - 1]), std::nullopt};
        if (law.reports_variance()) r.predicted_var = law.variance(i, series[i - 1]);
        out.push_back(r);
    }
    return out;
}

std::vector<PredictionRecord> predict(const GeoMgwiModel& model, const CountSeries& series) {
    return predict(StationaryLaw(model), series);
}

std::vector<PredictionRecord> predict(const RegressionModel& model, const CountSeries& series) {
    return predict(RegressionLaw(model), series);
}

}  // namespace mgwi

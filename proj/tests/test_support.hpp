#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "mgwi/distributions.hpp"

namespace mgwi::testing {

// Feasible ZMG-MGWI point found by the grid search in test_zmg_mgwi.cpp.
struct ZmgFixture {
    double mu;
    double pi;
    double alpha;
    double eta;
};
inline constexpr ZmgFixture kZmgFixture{2.0, 0.9, 4.0, 0.5};

// Empirical frequencies of draws in bins 0..max_bin (last bin open).
inline std::vector<double> frequencies(const std::vector<Count>& draws, Count max_bin) {
    std::vector<double> f(static_cast<std::size_t>(max_bin + 1), 0.0);
    for (Count d : draws) f[static_cast<std::size_t>(std::min(d, max_bin))] += 1.0;
    for (double& v : f) v /= static_cast<double>(draws.size());
    return f;
}

// |observed - expected| within z binomial standard errors.
inline bool within_binomial_se(double observed, double expected, std::size_t n, double z = 3.0) {
    const double se = std::sqrt(expected * (1.0 - expected) / static_cast<double>(n));
    return std::abs(observed - expected) <= z * se + 1e-12;
}

// Frequency of value k with a
// batch-means standard error that accounts for serial dependence.
inline std::pair<double, double> batch_frequency(const std::vector<Count>& draws, Count k, std::size_t batches) {
    const std::size_t len = draws.size() / batches;
    std::vector<double> f(batches, 0.0);
    for (std::size_t b = 0; b < batches; ++b) {
        for (std::size_t i = b * len; i < (b + 1) * len; ++i) f[b] += draws[i] == k ? 1.0 : 0.0;
        f[b] /= static_cast<double>(len);
    }
    double m = 0.0;
    for (double x : f) m += x;
    m /= static_cast<double>(batches);
    double v = 0.0;
    for (double x : f) v += (x - m) * (x - m);
    v /= static_cast<double>(batches - 1);
    return {m, std::sqrt(v / static_cast<double>(batches))};
}

inline double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double variance_of(const std::vector<double>& v) {
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

}  // namespace mgwi::testing

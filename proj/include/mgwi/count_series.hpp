#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mgwi/distributions.hpp"

namespace mgwi {

/// Ordered nonnegative counts x_1..x_n. Never empty.
class CountSeries {
public:
    explicit CountSeries(std::vector<Count> values, std::optional<std::string> origin = std::nullopt);

    [[nodiscard]] std::span<const Count> values() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    /// Zero-based access; element i is x_{i+1}.
    [[nodiscard]] Count operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] const std::optional<std::string>& origin() const noexcept { return origin_; }

    [[nodiscard]] std::vector<double> as_doubles() const;
    [[nodiscard]] bool is_constant() const noexcept;

private:
    std::vector<Count> values_;
    std::optional<std::string> origin_;
};

}  // namespace mgwi

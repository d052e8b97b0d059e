#include "mgwi/count_series.hpp"

#include <algorithm>
#include <stdexcept>

namespace mgwi {

CountSeries::CountSeries(std::vector<Count> values, std::optional<std::string> origin)
    : values_(std::move(values)), origin_(std::move(origin)) {
    if (values_.empty()) throw std::invalid_argument("count series must be nonempty");
    if (std::any_of(values_.begin(), values_.end(), [](Count v) { return v < 0; })) {
        throw std::invalid_argument("count series entries must be nonnegative");
    }
}

std::vector<double> CountSeries::as_doubles() const {
    return std::vector<double>(values_.begin(), values_.end());
}

bool CountSeries::is_constant() const noexcept {
    return std::all_of(values_.begin(), values_.end(),
                       [first = values_.front()](Count v) { return v == first; });
}

}  // namespace mgwi

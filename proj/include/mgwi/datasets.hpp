#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "mgwi/count_series.hpp"

namespace mgwi {

/// Monthly Hansen's disease case counts, January 2001 through December 2021 (252 months).
[[nodiscard]] CountSeries hansen_series();
/// FNV-1a 64 of the embedded text; checked on every load.
inline constexpr std::uint64_t kHansenChecksum = 0x97e0cbbc28931059ULL;

/// Names accepted by embedded_dataset().
[[nodiscard]] std::vector<std::string_view> embedded_dataset_names();
/// Throws std::invalid_argument for an unknown name.
[[nodiscard]] CountSeries embedded_dataset(std::string_view name);

}  // namespace mgwi

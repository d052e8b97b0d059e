#include "mgwi/datasets.hpp"

#include <charconv>
#include <stdexcept>
#include <string>

#include "mgwi/rng.hpp"

namespace mgwi {

namespace {

// One row per year, January to December.
constexpr std::string_view kHansenText =
    "60 58 91 72 94 52 54 78 64 111 81 70 "
    "55 72 71 70 61 51 80 82 97 107 142 81 "
    "92 106 126 78 86 69 91 91 64 83 83 55 "
    "67 82 121 84 102 77 83 102 77 59 86 67 "
    "59 86 84 102 75 57 82 126 107 123 138 94 "
    "88 78 105 91 106 68 85 106 95 80 101 67 "
    "78 81 96 68 94 67 66 88 71 84 74 64 "
    "79 75 66 81 74 45 82 91 85 74 77 61 "
    "53 79 105 81 68 67 64 73 75 76 85 48 "
    "51 74 94 64 60 51 54 70 69 68 64 43 "
    "66 67 83 77 71 67 58 90 73 59 78 72 "
    "71 82 80 64 82 60 83 77 76 60 49 52 "
    "54 53 80 83 52 52 79 61 71 61 78 47 "
    "61 79 51 63 51 45 61 63 83 63 60 40 "
    "64 53 79 43 55 47 48 66 48 48 46 48 "
    "39 43 54 34 50 38 38 67 35 44 48 41 "
    "40 46 54 43 43 53 45 68 65 44 58 47 "
    "64 42 72 62 51 42 43 64 47 48 76 40 "
    "63 70 56 54 59 51 60 65 80 85 65 49 "
    "57 62 61 16 21 19 35 25 60 63 51 30 "
    "35 53 56 41 44 41 32 33 17 5 5 5";

std::vector<Count> parse_counts(std::string_view text) {
    std::vector<Count> out;
    const char* p = text.data();
    const char* end = p + text.size();
    while (p < end) {
        while (p < end && *p == ' ') ++p;
        if (p == end) break;
        Count v = 0;
        const auto [next, ec] = std::from_chars(p, end, v);
        if (ec != std::errc{}) throw std::logic_error("embedded dataset is malformed");
        out.push_back(v);
        p = next;
    }
    return out;
}

}  // namespace

CountSeries hansen_series() {
    if (fnv1a64(kHansenText.data(), kHansenText.size()) != kHansenChecksum) {
        throw std::logic_error("embedded Hansen data failed its checksum");
    }
    return CountSeries(parse_counts(kHansenText), "hansen");
}

std::vector<std::string_view> embedded_dataset_names() { return {"hansen"}; }

CountSeries embedded_dataset(std::string_view name) {
    if (name == "hansen") return hansen_series();
    throw std::invalid_argument("unknown embedded dataset '" + std::string(name) + "' (available: hansen)");
}

}  // namespace mgwi

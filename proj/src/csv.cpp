#include "mgwi/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

namespace mgwi {

namespace {

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(const std::string& field, const std::string& where) {
    double v = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
        throw DataError(where + ": '" + field + "' is not a finite number");
    }
    return v;
}

}  // namespace

Eigen::VectorXd SeriesTable::covariate(const std::string& name) const {
    for (std::size_t j = 0; j < covariate_names.size(); ++j) {
        if (covariate_names[j] == name) return covariates.col(static_cast<Eigen::Index>(j));
    }
    throw DataError("no covariate column named '" + name + "'");
}

std::vector<std::string> split_csv_record(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                current += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                current += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(trim(current));
            current.clear();
        } else {
            current += c;
        }
    }
    if (quoted) throw DataError("unterminated quoted field");
    fields.push_back(trim(current));
    return fields;
}

SeriesTable read_series_csv(std::istream& in, const std::string& origin) {
    std::string line;
    std::vector<std::string> header;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        header = split_csv_record(t);
        break;
    }
    if (header.empty()) throw DataError(origin + ": missing header row");

    std::optional<std::size_t> count_col;
    std::vector<std::size_t> cov_cols;
    std::vector<std::string> cov_names;
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (header[j] == "count") {
            if (count_col) throw DataError(origin + ": duplicate 'count' column");
            count_col = j;
        } else if (header[j] != "t") {
            cov_cols.push_back(j);
            cov_names.push_back(header[j]);
        }
    }
    if (!count_col) throw DataError(origin + ": header has no 'count' column");

    std::vector<Count> counts;
    std::vector<std::vector<double>> cov_rows;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const std::vector<std::string> fields = split_csv_record(t);
        const std::string where = origin + ":" + std::to_string(line_no);
        if (fields.size() != header.size()) {
            throw DataError(where + ": expected " + std::to_string(header.size()) + " fields, got " +
                            std::to_string(fields.size()));
        }
        const double c = parse_number(fields[*count_col], where);
        if (c < 0.0 || c != std::floor(c)) throw DataError(where + ": count must be a nonnegative integer");
        counts.push_back(static_cast<Count>(c));
        std::vector<double> row;
        for (std::size_t j : cov_cols) row.push_back(parse_number(fields[j], where));
        cov_rows.push_back(std::move(row));
    }
    if (counts.empty()) throw DataError(origin + ": no data rows");

    Eigen::MatrixXd cov(static_cast<Eigen::Index>(counts.size()), static_cast<Eigen::Index>(cov_cols.size()));
    for (std::size_t i = 0; i < cov_rows.size(); ++i) {
        for (std::size_t j = 0; j < cov_cols.size(); ++j) {
            cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cov_rows[i][j];
        }
    }
    return SeriesTable{CountSeries(std::move(counts), origin), std::move(cov_names), std::move(cov)};
}

SeriesTable read_series_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    return read_series_csv(in, path);
}

void write_series_csv(std::ostream& out, const CountSeries& series, bool with_time,
                      const std::vector<std::string>& comments) {
    for (const std::string& c : comments) out << "# " << c << '\n';
    out << (with_time ? "t,count\n" : "count\n");
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (with_time) out << i + 1 << ',';
        out << series[i] << '\n';
    }
}

}  // namespace mgwi

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mgwi/count_series.hpp"

namespace mgwi {

/// Malformed or unreadable input data.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A series read from CSV plus any extra numeric columns.
struct SeriesTable {
    CountSeries series;
    std::vector<std::string> covariate_names;
    /// One column per covariate, one row per observation.
    Eigen::MatrixXd covariates;

    /// Throws DataError when the column is absent.
    [[nodiscard]] Eigen::VectorXd covariate(const std::string& name) const;
};

/// Splits one CSV record, honouring double-quoted fields.
[[nodiscard]] std::vector<std::string> split_csv_record(const std::string& line);

/**
 * Header row required, a `count` column is mandatory, a `t` column is taken as
 * the time index and ignored, every other column is a numeric covariate.
 * Lines starting with '#' and blank lines are skipped. Throws DataError.
 */
[[nodiscard]] SeriesTable read_series_csv(std::istream& in, const std::string& origin = "stream");
[[nodiscard]] SeriesTable read_series_csv_file(const std::string& path);

/// Writes "# " + each comment line, then `t,count` (or `count`) rows.
void write_series_csv(std::ostream& out, const CountSeries& series, bool with_time = true,
                      const std::vector<std::string>& comments = {});

}  // namespace mgwi

#pragma once

#include <span>
#include <string>
#include <vector>

#include "wxbench/core/matrix.hpp"
#include "wxbench/ingest/weather.hpp"

namespace wxbench::analysis {

struct CorrelationMatrix {
  Matrix r{};
  std::vector<std::string> feature_names{};
};

/// Pearson r between two equal-length samples. A constant sample gives 0.
double pearson(std::span<const double> a, std::span<const double> b);

/// Pairwise Pearson correlations between the columns of `columns`. Constant
/// columns correlate 0 with everything else and 1 with themselves. Throws
/// InvalidArgument with fewer than 2 rows.
CorrelationMatrix pearson_matrix(const Matrix& columns, std::vector<std::string> names);
CorrelationMatrix pearson_matrix(const ingest::WeatherTable& table);

/// Other features ordered by |r| with `feature`, strongest first (ties by column order).
std::vector<std::string> strongest_partners(const CorrelationMatrix& corr, const std::string& feature);

/// Header row and column of feature names.
std::string correlation_csv(const CorrelationMatrix& corr);

}  // namespace wxbench::analysis

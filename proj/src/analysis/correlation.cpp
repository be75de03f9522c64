#include "wxbench/analysis/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "wxbench/core/errors.hpp"
#include "wxbench/core/text.hpp"

namespace wxbench::analysis {

double pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("pearson: length mismatch");
  const std::size_t n = a.size();
  if (n < 2) throw InvalidArgument("pearson: need at least 2 rows");
  const double nd = static_cast<double>(n);
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / nd;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / nd;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  // The 1/(n-1) factors of the unbiased covariance and variances cancel.
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

CorrelationMatrix pearson_matrix(const Matrix& columns, std::vector<std::string> names) {
  if (columns.rows() < 2) throw InvalidArgument("pearson_matrix: need at least 2 rows");
  if (names.size() != columns.cols()) throw InvalidArgument("pearson_matrix: name count does not match columns");
  const std::size_t d = columns.cols();
  std::vector<std::vector<double>> cols(d);
  for (std::size_t c = 0; c < d; ++c) cols[c] = columns.column(c);
  CorrelationMatrix out{Matrix(d, d), std::move(names)};
  for (std::size_t i = 0; i < d; ++i) {
    out.r(i, i) = 1.0;
    for (std::size_t j = i + 1; j < d; ++j) out.r(i, j) = out.r(j, i) = pearson(cols[i], cols[j]);
  }
  return out;
}

CorrelationMatrix pearson_matrix(const ingest::WeatherTable& table) {
  const auto& names = ingest::feature_names();
  return pearson_matrix(table.feature_matrix(), std::vector<std::string>(names.begin(), names.end()));
}

std::vector<std::string> strongest_partners(const CorrelationMatrix& corr, const std::string& feature) {
  const auto it = std::find(corr.feature_names.begin(), corr.feature_names.end(), feature);
  if (it == corr.feature_names.end()) throw InvalidArgument("unknown feature '" + feature + "'");
  const auto self = static_cast<std::size_t>(it - corr.feature_names.begin());
  std::vector<std::size_t> others;
  for (std::size_t j = 0; j < corr.feature_names.size(); ++j) {
    if (j != self) others.push_back(j);
  }
  std::stable_sort(others.begin(), others.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(corr.r(self, a)) > std::abs(corr.r(self, b));
  });
  std::vector<std::string> out;
  for (auto j : others) out.push_back(corr.feature_names[j]);
  return out;
}

std::string correlation_csv(const CorrelationMatrix& corr) {
  std::ostringstream out;
  out << "feature";
  for (const auto& n : corr.feature_names) out << ',' << n;
  out << '\n';
  for (std::size_t i = 0; i < corr.feature_names.size(); ++i) {
    out << corr.feature_names[i];
    for (std::size_t j = 0; j < corr.feature_names.size(); ++j) out << ',' << format_double(corr.r(i, j));
    out << '\n';
  }
  return out.str();
}

}  // namespace wxbench::analysis

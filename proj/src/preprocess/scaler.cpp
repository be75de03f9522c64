#include "wxbench/preprocess/scaler.hpp"

#include <algorithm>
#include <string>

#include "wxbench/core/errors.hpp"

namespace wxbench::preprocess {
namespace {

void check_dims(const ScalerParams& params, const Matrix& rows) {
  if (rows.cols() != params.size()) {
    throw InvalidArgument("min-max scaler: expected " + std::to_string(params.size()) + " columns, got " +
                          std::to_string(rows.cols()));
  }
}

}  // namespace

ScalerParams fit_minmax(const Matrix& rows) {
  if (rows.rows() == 0 || rows.cols() == 0) throw InvalidArgument("fit_minmax: empty matrix");
  ScalerParams p;
  const auto first = rows.row(0);
  p.min.assign(first.begin(), first.end());
  p.max.assign(first.begin(), first.end());
  for (std::size_t r = 1; r < rows.rows(); ++r) {
    const auto row = rows.row(r);
    for (std::size_t c = 0; c < rows.cols(); ++c) {
      p.min[c] = std::min(p.min[c], row[c]);
      p.max[c] = std::max(p.max[c], row[c]);
    }
  }
  return p;
}

Matrix apply_minmax(const ScalerParams& params, const Matrix& rows) {
  check_dims(params, rows);
  Matrix out(rows.rows(), rows.cols());
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    for (std::size_t c = 0; c < rows.cols(); ++c) {
      const double span = params.max[c] - params.min[c];
      out(r, c) = span > 0.0 ? (rows(r, c) - params.min[c]) / span : 0.0;
    }
  }
  return out;
}

Matrix invert_minmax(const ScalerParams& params, const Matrix& rows) {
  check_dims(params, rows);
  Matrix out(rows.rows(), rows.cols());
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    for (std::size_t c = 0; c < rows.cols(); ++c) {
      out(r, c) = params.min[c] + rows(r, c) * (params.max[c] - params.min[c]);
    }
  }
  return out;
}

}  // namespace wxbench::preprocess

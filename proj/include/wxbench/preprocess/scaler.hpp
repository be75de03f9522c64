#pragma once

#include <vector>

#include "wxbench/core/matrix.hpp"

namespace wxbench::preprocess {

/// Column-wise extrema of the rows the scaler was fitted on.
struct ScalerParams {
  std::vector<double> min{};
  std::vector<double> max{};

  [[nodiscard]] std::size_t size() const noexcept { return min.size(); }
  bool operator==(const ScalerParams&) const = default;
};

/// Throws InvalidArgument on an empty matrix.
ScalerParams fit_minmax(const Matrix& rows);

/// x' = (x - min) / (max - min). Constant columns map to 0. Values outside the
/// fitted range are left unclipped.
Matrix apply_minmax(const ScalerParams& params, const Matrix& rows);

/// Algebraic inverse of apply_minmax; constant columns map back to their min.
Matrix invert_minmax(const ScalerParams& params, const Matrix& rows);

}  // namespace wxbench::preprocess

#pragma once

#include <span>

#include "wxbench/core/matrix.hpp"

namespace wxbench {

/// Hard labels plus one row of class scores per sample. For every model the
/// score rows lie on the probability simplex.
struct ClassPrediction {
  Labels labels{};
  Matrix proba{};
};

/// Row-wise argmax, lowest class index on ties.
Labels labels_from_scores(const Matrix& scores);

/// Distinct labels present in `y`.
std::size_t count_distinct(std::span<const int> y);

}  // namespace wxbench

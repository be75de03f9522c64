#include "wxbench/core/prediction.hpp"

#include <set>

namespace wxbench {

Labels labels_from_scores(const Matrix& scores) {
  Labels out(scores.rows());
  for (std::size_t r = 0; r < scores.rows(); ++r) out[r] = static_cast<int>(argmax(scores.row(r)));
  return out;
}

std::size_t count_distinct(std::span<const int> y) { return std::set<int>(y.begin(), y.end()).size(); }

}  // namespace wxbench

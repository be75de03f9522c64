#pragma once

#include <span>

#include <json.hpp>

#include "wxbench/core/matrix.hpp"
#include "wxbench/core/prediction.hpp"

namespace wxbench::learners {

/// Exact brute-force k-nearest-neighbour classifier (Euclidean).
struct KnnModel {
  Matrix x{};
  Labels y{};
  std::size_t k{15};
  std::size_t n_classes{0};
  bool operator==(const KnnModel&) const = default;
};

/// Throws InvalidArgument when k is 0 or exceeds the training rows.
KnnModel fit_knn(const Matrix& x, std::span<const int> y, std::size_t n_classes, std::size_t k);

/// Neighbours are the k smallest (distance, training row) pairs, so distance
/// ties go to the lower row index. The label is the majority vote (lowest
/// class on ties); the probability row holds neighbour class frequencies.
ClassPrediction predict_knn(const KnnModel& model, const Matrix& x);

nlohmann::ordered_json to_json(const KnnModel& model);
KnnModel knn_from_json(const nlohmann::ordered_json& j);

}  // namespace wxbench::learners

/**
 * @file gbm.hpp
 * @brief Multiclass gradient boosting on the softmax cross-entropy loss.
 *
 * Raw scores start at F_k = ln(prior_k + 1e-12). Each round computes
 * p = softmax(F), fits one squared-error tree per class to the residual
 * onehot_k - p_k, and adds learning_rate * tree_k(x) to F_k. Leaf values are
 * the mean residual in the leaf (no Newton refit).
 */
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "wxbench/cart/tree.hpp"
#include "wxbench/core/matrix.hpp"
#include "wxbench/core/prediction.hpp"

namespace wxbench::ensembles {

struct GbmParams {
  int rounds{200};
  double learning_rate{0.1};
  cart::TreeParams tree{.max_depth = 3, .min_samples_leaf = 1, .criterion = cart::Criterion::mse};
};

struct GbmModel {
  std::vector<double> init_scores{};
  /// One tree per class per round.
  std::vector<std::vector<cart::DecisionTree>> stages{};
  double learning_rate{0.1};
  std::size_t n_classes{0};
  std::size_t n_features{0};
  /// Mean training cross-entropy before round 1 and after every round.
  std::vector<double> training_loss{};
  bool operator==(const GbmModel&) const = default;
};

GbmModel fit_gbm(const Matrix& x, std::span<const int> y, std::size_t n_classes, const GbmParams& params,
                 std::uint64_t seed);

/// Raw additive scores F (before softmax).
Matrix gbm_raw_scores(const GbmModel& model, const Matrix& x);
ClassPrediction predict_gbm(const GbmModel& model, const Matrix& x);

/// Row-wise softmax, max-shifted.
Matrix softmax_rows(const Matrix& scores);
/// Mean of logsumexp(F_i) - F_i[y_i].
double softmax_cross_entropy(const Matrix& scores, std::span<const int> y);

nlohmann::ordered_json to_json(const GbmModel& model);
GbmModel gbm_from_json(const nlohmann::ordered_json& j);

}  // namespace wxbench::ensembles

/**
 * @file adaboost.hpp
 * @brief Multiclass AdaBoost (SAMME) over weighted CART trees.
 *
 * Sample weights start uniform. Each round fits a tree on the current
 * weights, measures its weighted error e, and stops (discarding the round)
 * once e >= 1 - 1/K. Otherwise the stage weight is
 *   alpha = ln((1 - e) / e) + ln(K - 1)
 * and misclassified samples are scaled by exp(alpha) before renormalizing.
 * A perfect round (e = 0) is kept with alpha = ln(1e12) and ends training.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <json.hpp>

#include "wxbench/cart/tree.hpp"
#include "wxbench/core/matrix.hpp"
#include "wxbench/core/prediction.hpp"

namespace wxbench::ensembles {

struct AdaBoostParams {
  int rounds{200};
  cart::TreeParams tree{.max_depth = 2, .min_samples_leaf = 1, .criterion = cart::Criterion::gini};
};

struct AdaBoostStage {
  cart::DecisionTree tree{};
  double alpha{0.0};
  /// Weighted training error the stage was fitted at.
  double error{0.0};
  bool operator==(const AdaBoostStage&) const = default;
};

struct AdaBoostModel {
  std::vector<AdaBoostStage> stages{};
  std::size_t n_classes{0};
  std::size_t n_features{0};
  bool operator==(const AdaBoostModel&) const = default;
};

/// Called after every kept round with the stage and the renormalized weights
/// that the next round will train on.
using AdaBoostObserver =
    std::function<void(std::size_t round, const AdaBoostStage& stage, std::span<const double> updated_weights)>;

inline constexpr double kMaxAdaBoostAlpha = 27.631021115928547;  // ln(1e12)

AdaBoostModel fit_adaboost(const Matrix& x, std::span<const int> y, std::size_t n_classes, const AdaBoostParams& params,
                           std::uint64_t seed, const AdaBoostObserver& observer = {});

/// Scores are stage-weight votes normalized by the total alpha.
ClassPrediction predict_adaboost(const AdaBoostModel& model, const Matrix& x);

/// SAMME stage weight for weighted error `e` with `k` classes.
double samme_alpha(double e, std::size_t k);

nlohmann::ordered_json to_json(const AdaBoostModel& model);
AdaBoostModel adaboost_from_json(const nlohmann::ordered_json& j);

}  // namespace wxbench::ensembles

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "wxbench/cart/tree.hpp"
#include "wxbench/core/matrix.hpp"
#include "wxbench/core/prediction.hpp"

namespace wxbench::ensembles {

struct ForestParams {
  int n_trees{200};
  cart::TreeParams tree{.max_depth = 10, .min_samples_leaf = 1, .criterion = cart::Criterion::gini};
  /// Features tried per node; ceil(sqrt(D)) when unset.
  std::optional<std::size_t> max_features{};
  /// Test hook: train every tree on the full sample.
  bool bootstrap{true};
};

struct ForestModel {
  std::vector<cart::DecisionTree> trees{};
  /// Seed of each tree; the tree's bootstrap draw is bootstrap_counts(n, seed).
  std::vector<std::uint64_t> seeds{};
  std::size_t n_classes{0};
  std::size_t n_features{0};
  bool operator==(const ForestModel&) const = default;
};

/// Multiplicity of each of n rows in one bootstrap sample of size n.
std::vector<std::uint32_t> bootstrap_counts(std::size_t n, std::uint64_t tree_seed);
/// Rows absent from that bootstrap sample.
std::vector<std::size_t> out_of_bag_rows(std::size_t n, std::uint64_t tree_seed);

/// Bagged Gini trees. A bootstrap draw is fed to CART as integer sample
/// weights, which is equivalent to duplicating the drawn rows.
ForestModel fit_forest(const Matrix& x, std::span<const int> y, std::size_t n_classes, const ForestParams& params,
                       std::uint64_t seed);

/// Mean of the trees' leaf class distributions.
ClassPrediction predict_forest(const ForestModel& model, const Matrix& x);

nlohmann::ordered_json to_json(const ForestModel& model);
ForestModel forest_from_json(const nlohmann::ordered_json& j);

}  // namespace wxbench::ensembles

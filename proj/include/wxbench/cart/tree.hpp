/**
 * @file tree.hpp
 * @brief Weighted CART trees (Gini classification, squared-error regression).
 *
 * Splits are chosen greedily by the largest weighted criterion reduction.
 * Candidate thresholds are midpoints between consecutive distinct feature
 * values; rows with x <= threshold go left. Equal-score splits resolve to the
 * lowest feature index, then the lowest threshold.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wxbench/core/matrix.hpp"

namespace wxbench::cart {

enum class Criterion { gini, mse };

struct TreeParams {
  int max_depth{6};
  int min_samples_leaf{1};
  Criterion criterion{Criterion::gini};
  /// Features drawn (without replacement) per node; all features when unset.
  std::optional<std::size_t> feature_subsample{};
};

/// Preorder node. The left child of an internal node is the next node.
struct TreeNode {
  int feature{-1};
  double threshold{0.0};
  std::int32_t right{-1};
  /// Class distribution (gini) or a single mean (mse); empty for internal nodes.
  std::vector<double> value{};
  /// Sum of training weights that reached the node.
  double weight{0.0};
  /// Weighted impurity of the node (gini index or variance).
  double impurity{0.0};

  [[nodiscard]] bool is_leaf() const noexcept { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

class DecisionTree {
 public:
  DecisionTree() = default;
  DecisionTree(std::vector<TreeNode> nodes, std::size_t n_features, std::size_t n_outputs, Criterion criterion);

  [[nodiscard]] std::span<const TreeNode> nodes() const noexcept { return nodes_; }
  [[nodiscard]] std::size_t n_features() const noexcept { return n_features_; }
  /// K for classification trees, 1 for regression trees.
  [[nodiscard]] std::size_t n_outputs() const noexcept { return n_outputs_; }
  [[nodiscard]] Criterion criterion() const noexcept { return criterion_; }
  [[nodiscard]] std::size_t depth() const noexcept;
  [[nodiscard]] std::size_t leaf_count() const noexcept;

  /// Index of the leaf `x` routes to.
  [[nodiscard]] std::size_t leaf_index(std::span<const double> x) const noexcept;
  [[nodiscard]] std::span<const double> leaf_value(std::span<const double> x) const noexcept {
    return nodes_[leaf_index(x)].value;
  }

  bool operator==(const DecisionTree&) const = default;

 private:
  std::vector<TreeNode> nodes_{};
  std::size_t n_features_{0};
  std::size_t n_outputs_{0};
  Criterion criterion_{Criterion::gini};
};

/// Gini index 1 - sum p_k^2 of a weighted class histogram. Throws on zero mass.
double gini_impurity(std::span<const double> class_mass);

/// Empty `weights` means unit weights. Rows with zero weight are ignored.
DecisionTree fit_cart_classifier(const Matrix& x, std::span<const int> y, std::size_t n_classes,
                                 std::span<const double> weights, const TreeParams& params, std::uint64_t seed);

DecisionTree fit_cart_regressor(const Matrix& x, std::span<const double> y, std::span<const double> weights,
                                const TreeParams& params, std::uint64_t seed);

/// One row of leaf values per input row.
Matrix predict_cart(const DecisionTree& tree, const Matrix& x);

/// Hard labels from a classification tree (argmax, lowest index on ties).
Labels predict_cart_labels(const DecisionTree& tree, const Matrix& x);

nlohmann::ordered_json to_json(const DecisionTree& tree);
DecisionTree tree_from_json(const nlohmann::ordered_json& j);

std::string_view to_string(Criterion c) noexcept;

}  // namespace wxbench::cart

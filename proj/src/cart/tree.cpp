#include "wxbench/cart/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "wxbench/core/errors.hpp"
#include "wxbench/core/random.hpp"

namespace wxbench::cart {
namespace {

struct Split {
  int feature{-1};
  double threshold{0.0};
  double score{std::numeric_limits<double>::infinity()};  // children's weighted impurity
  std::size_t left_count{0};
};

/// Shared greedy builder. Classification targets are class ids stored as doubles.
class Builder {
 public:
  Builder(const Matrix& x, std::span<const double> y, std::span<const double> w, std::size_t n_classes,
          const TreeParams& params, std::uint64_t seed)
      : x_(x), y_(y), w_(w), k_(n_classes), params_(params), rng_(seed), gini_(params.criterion == Criterion::gini) {
    for (std::size_t i = 0; i < x.rows(); ++i) {
      if (w[i] > 0.0) rows_.push_back(static_cast<std::uint32_t>(i));
    }
    const std::size_t d = x.cols();
    order_.assign(d, rows_);
    for (std::size_t f = 0; f < d; ++f) {
      std::stable_sort(order_[f].begin(), order_[f].end(),
                       [&](std::uint32_t a, std::uint32_t b) { return x_(a, f) < x_(b, f); });
    }
    goes_left_.assign(x.rows(), 0);
  }

  std::vector<TreeNode> build() {
    grow(0, rows_.size(), 0);
    return std::move(nodes_);
  }

 private:
  struct Stats {
    double weight{0.0};
    std::vector<double> mass{};  // gini
    double sum{0.0}, sum_sq{0.0};  // mse
    double y_min{std::numeric_limits<double>::infinity()};
    double y_max{-std::numeric_limits<double>::infinity()};
  };

  Stats node_stats(std::size_t begin, std::size_t end) const {
    Stats s;
    if (gini_) s.mass.assign(k_, 0.0);
    for (std::size_t p = begin; p < end; ++p) {
      const auto i = order_[0][p];
      const double wi = w_[i];
      s.weight += wi;
      if (gini_) {
        s.mass[static_cast<std::size_t>(y_[i])] += wi;
      } else {
        s.sum += wi * y_[i];
        s.sum_sq += wi * y_[i] * y_[i];
        s.y_min = std::min(s.y_min, y_[i]);
        s.y_max = std::max(s.y_max, y_[i]);
      }
    }
    return s;
  }

  /// Weighted impurity W * impurity, i.e. the quantity children scores are compared in.
  double weighted_impurity(const Stats& s) const {
    if (gini_) {
      double sq = 0.0;
      for (double m : s.mass) sq += m * m;
      return s.weight - sq / s.weight;
    }
    return std::max(0.0, s.sum_sq - s.sum * s.sum / s.weight);
  }

  bool is_pure(const Stats& s) const {
    if (gini_) return std::count_if(s.mass.begin(), s.mass.end(), [](double m) { return m > 0.0; }) <= 1;
    return s.y_min == s.y_max;
  }

  std::vector<std::size_t> candidate_features() {
    const std::size_t d = x_.cols();
    if (!params_.feature_subsample || *params_.feature_subsample >= d) {
      std::vector<std::size_t> all(d);
      std::iota(all.begin(), all.end(), std::size_t{0});
      return all;
    }
    auto picked = rng_.sample_without_replacement(d, *params_.feature_subsample);
    std::sort(picked.begin(), picked.end());
    return picked;
  }

  void scan_feature(std::size_t f, std::size_t begin, std::size_t end, const Stats& parent, Split& best) const {
    const auto& ord = order_[f];
    const auto msl = static_cast<std::size_t>(params_.min_samples_leaf);
    const std::size_t n = end - begin;

    double wl = 0.0;
    // gini: running sum of squared class masses on each side
    std::vector<double> ml;
    double sq_l = 0.0, sq_r = 0.0;
    std::vector<double> mr;
    double sl = 0.0, s2l = 0.0;
    if (gini_) {
      ml.assign(k_, 0.0);
      mr = parent.mass;
      for (double m : mr) sq_r += m * m;
    }

    for (std::size_t p = begin; p + 1 < end; ++p) {
      const auto i = ord[p];
      const double wi = w_[i];
      wl += wi;
      if (gini_) {
        const auto c = static_cast<std::size_t>(y_[i]);
        sq_l += (ml[c] + wi) * (ml[c] + wi) - ml[c] * ml[c];
        sq_r += (mr[c] - wi) * (mr[c] - wi) - mr[c] * mr[c];
        ml[c] += wi;
        mr[c] -= wi;
      } else {
        sl += wi * y_[i];
        s2l += wi * y_[i] * y_[i];
      }
      const std::size_t left_n = p - begin + 1;
      if (left_n < msl || n - left_n < msl) continue;
      const double a = x_(i, f);
      const double b = x_(ord[p + 1], f);
      if (!(a < b)) continue;

      const double wr = parent.weight - wl;
      if (wl <= 0.0 || wr <= 0.0) continue;
      double score = 0.0;
      if (gini_) {
        score = (wl - sq_l / wl) + (wr - sq_r / wr);
      } else {
        const double sr = parent.sum - sl;
        const double s2r = parent.sum_sq - s2l;
        score = std::max(0.0, s2l - sl * sl / wl) + std::max(0.0, s2r - sr * sr / wr);
      }
      if (score < best.score) {
        double thr = 0.5 * (a + b);
        if (!(thr < b)) thr = a;
        best = Split{static_cast<int>(f), thr, score, left_n};
      }
    }
  }

  void make_leaf(std::size_t node, const Stats& s) {
    auto& n = nodes_[node];
    n.feature = -1;
    if (gini_) {
      const double total = std::accumulate(s.mass.begin(), s.mass.end(), 0.0);
      n.value.resize(k_);
      for (std::size_t c = 0; c < k_; ++c) n.value[c] = s.mass[c] / total;
    } else {
      n.value = {s.sum / s.weight};
    }
  }

  void grow(std::size_t begin, std::size_t end, int depth) {
    const std::size_t node = nodes_.size();
    nodes_.emplace_back();
    const Stats s = node_stats(begin, end);
    nodes_[node].weight = s.weight;
    nodes_[node].impurity = weighted_impurity(s) / s.weight;

    const std::size_t n = end - begin;
    const auto msl = static_cast<std::size_t>(params_.min_samples_leaf);
    if (depth >= params_.max_depth || n < 2 * msl || is_pure(s)) {
      make_leaf(node, s);
      return;
    }

    Split best;
    for (std::size_t f : candidate_features()) scan_feature(f, begin, end, s, best);
    if (best.feature < 0) {
      make_leaf(node, s);
      return;
    }

    const auto bf = static_cast<std::size_t>(best.feature);
    for (std::size_t p = begin; p < end; ++p) {
      const auto i = order_[bf][p];
      goes_left_[i] = x_(i, bf) <= best.threshold ? 1 : 0;
    }
    for (auto& ord : order_) {
      std::stable_partition(ord.begin() + static_cast<std::ptrdiff_t>(begin),
                            ord.begin() + static_cast<std::ptrdiff_t>(end),
                            [&](std::uint32_t i) { return goes_left_[i] != 0; });
    }
    const std::size_t mid = begin + best.left_count;

    nodes_[node].feature = best.feature;
    nodes_[node].threshold = best.threshold;
    grow(begin, mid, depth + 1);
    nodes_[node].right = static_cast<std::int32_t>(nodes_.size());
    grow(mid, end, depth + 1);
  }

  const Matrix& x_;
  std::span<const double> y_;
  std::span<const double> w_;
  std::size_t k_;
  TreeParams params_;
  Rng rng_;
  bool gini_;
  std::vector<std::uint32_t> rows_{};
  std::vector<std::vector<std::uint32_t>> order_{};
  std::vector<std::uint8_t> goes_left_{};
  std::vector<TreeNode> nodes_{};
};

std::vector<double> checked_weights(const Matrix& x, std::size_t n_targets, std::span<const double> weights,
                                    const TreeParams& params) {
  if (x.rows() == 0 || x.cols() == 0) throw InvalidArgument("fit_cart: empty input");
  if (n_targets != x.rows()) throw InvalidArgument("fit_cart: target count does not match rows");
  if (params.max_depth < 1) throw InvalidArgument("fit_cart: max_depth must be >= 1");
  if (params.min_samples_leaf < 1) throw InvalidArgument("fit_cart: min_samples_leaf must be >= 1");
  if (params.feature_subsample && *params.feature_subsample == 0) {
    throw InvalidArgument("fit_cart: feature_subsample must be >= 1");
  }
  for (double v : x.data()) {
    if (std::isnan(v)) throw InvalidArgument("fit_cart: NaN in feature matrix");
  }
  std::vector<double> w;
  if (weights.empty()) {
    w.assign(x.rows(), 1.0);
  } else {
    if (weights.size() != x.rows()) throw InvalidArgument("fit_cart: weight count does not match rows");
    w.assign(weights.begin(), weights.end());
  }
  double total = 0.0;
  for (double v : w) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument("fit_cart: weights must be finite and >= 0");
    total += v;
  }
  if (!(total > 0.0)) throw InvalidArgument("fit_cart: weights sum to zero");
  return w;
}

}  // namespace

DecisionTree::DecisionTree(std::vector<TreeNode> nodes, std::size_t n_features, std::size_t n_outputs,
                           Criterion criterion)
    : nodes_(std::move(nodes)), n_features_(n_features), n_outputs_(n_outputs), criterion_(criterion) {}

std::size_t DecisionTree::depth() const noexcept {
  // preorder walk with an explicit stack of (node, depth)
  std::size_t best = 0;
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  if (!nodes_.empty()) stack.emplace_back(0, 0);
  while (!stack.empty()) {
    const auto [i, d] = stack.back();
    stack.pop_back();
    best = std::max(best, d);
    if (!nodes_[i].is_leaf()) {
      stack.emplace_back(i + 1, d + 1);
      stack.emplace_back(static_cast<std::size_t>(nodes_[i].right), d + 1);
    }
  }
  return best;
}

std::size_t DecisionTree::leaf_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

std::size_t DecisionTree::leaf_index(std::span<const double> x) const noexcept {
  std::size_t i = 0;
  while (!nodes_[i].is_leaf()) {
    const auto& n = nodes_[i];
    i = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? i + 1 : static_cast<std::size_t>(n.right);
  }
  return i;
}

double gini_impurity(std::span<const double> class_mass) {
  double total = 0.0;
  for (double m : class_mass) {
    if (m < 0.0) throw InvalidArgument("gini_impurity: negative mass");
    total += m;
  }
  if (!(total > 0.0)) throw InvalidArgument("gini_impurity: all-zero mass");
  double sq = 0.0;
  for (double m : class_mass) sq += (m / total) * (m / total);
  return 1.0 - sq;
}

DecisionTree fit_cart_classifier(const Matrix& x, std::span<const int> y, std::size_t n_classes,
                                 std::span<const double> weights, const TreeParams& params, std::uint64_t seed) {
  const auto w = checked_weights(x, y.size(), weights, params);
  if (n_classes < 1) throw InvalidArgument("fit_cart: n_classes must be >= 1");
  std::vector<double> yd(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] < 0 || static_cast<std::size_t>(y[i]) >= n_classes) throw InvalidArgument("fit_cart: label out of range");
    yd[i] = y[i];
  }
  TreeParams p = params;
  p.criterion = Criterion::gini;
  Builder b(x, yd, w, n_classes, p, seed);
  return DecisionTree(b.build(), x.cols(), n_classes, Criterion::gini);
}

DecisionTree fit_cart_regressor(const Matrix& x, std::span<const double> y, std::span<const double> weights,
                                const TreeParams& params, std::uint64_t seed) {
  const auto w = checked_weights(x, y.size(), weights, params);
  for (double v : y) {
    if (!std::isfinite(v)) throw InvalidArgument("fit_cart: non-finite regression target");
  }
  TreeParams p = params;
  p.criterion = Criterion::mse;
  Builder b(x, y, w, 1, p, seed);
  return DecisionTree(b.build(), x.cols(), 1, Criterion::mse);
}

Matrix predict_cart(const DecisionTree& tree, const Matrix& x) {
  if (x.cols() != tree.n_features()) {
    throw InvalidArgument("predict_cart: expected " + std::to_string(tree.n_features()) + " columns, got " +
                          std::to_string(x.cols()));
  }
  Matrix out(x.rows(), tree.n_outputs());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const auto v = tree.leaf_value(x.row(r));
    std::copy(v.begin(), v.end(), out.row(r).begin());
  }
  return out;
}

Labels predict_cart_labels(const DecisionTree& tree, const Matrix& x) {
  const Matrix values = predict_cart(tree, x);
  Labels out(values.rows());
  for (std::size_t r = 0; r < values.rows(); ++r) out[r] = static_cast<int>(argmax(values.row(r)));
  return out;
}

std::string_view to_string(Criterion c) noexcept { return c == Criterion::gini ? "gini" : "mse"; }

nlohmann::ordered_json to_json(const DecisionTree& tree) {
  nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
  for (const auto& n : tree.nodes()) {
    nlohmann::ordered_json node;
    if (n.is_leaf()) {
      node["value"] = n.value;
    } else {
      node["feature"] = n.feature;
      node["threshold"] = n.threshold;
      node["right"] = n.right;
    }
    node["weight"] = n.weight;
    node["impurity"] = n.impurity;
    nodes.push_back(std::move(node));
  }
  nlohmann::ordered_json j;
  j["kind"] = "cart";
  j["criterion"] = std::string(to_string(tree.criterion()));
  j["n_features"] = tree.n_features();
  j["n_outputs"] = tree.n_outputs();
  j["nodes"] = std::move(nodes);
  return j;
}

DecisionTree tree_from_json(const nlohmann::ordered_json& j) {
  if (j.at("kind") != "cart") throw ParseError("tree_from_json: not a cart tree");
  const Criterion c = j.at("criterion") == "gini" ? Criterion::gini : Criterion::mse;
  std::vector<TreeNode> nodes;
  for (const auto& jn : j.at("nodes")) {
    TreeNode n;
    if (jn.contains("value")) {
      n.value = jn.at("value").get<std::vector<double>>();
    } else {
      n.feature = jn.at("feature").get<int>();
      n.threshold = jn.at("threshold").get<double>();
      n.right = jn.at("right").get<std::int32_t>();
    }
    n.weight = jn.at("weight").get<double>();
    n.impurity = jn.at("impurity").get<double>();
    nodes.push_back(std::move(n));
  }
  return DecisionTree(std::move(nodes), j.at("n_features").get<std::size_t>(), j.at("n_outputs").get<std::size_t>(), c);
}

}  // namespace wxbench::cart

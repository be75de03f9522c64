#include "wxbench/ensembles/forest.hpp"

#include <cmath>
#include <string>

#include "wxbench/core/errors.hpp"
#include "wxbench/core/random.hpp"

namespace wxbench::ensembles {

std::vector<std::uint32_t> bootstrap_counts(std::size_t n, std::uint64_t tree_seed) {
  Rng rng(derive_seed(tree_seed, "bootstrap"));
  std::vector<std::uint32_t> counts(n, 0);
  for (std::size_t i = 0; i < n; ++i) ++counts[rng.below(n)];
  return counts;
}

std::vector<std::size_t> out_of_bag_rows(std::size_t n, std::uint64_t tree_seed) {
  const auto counts = bootstrap_counts(n, tree_seed);
  std::vector<std::size_t> oob;
  for (std::size_t i = 0; i < n; ++i) {
    if (counts[i] == 0) oob.push_back(i);
  }
  return oob;
}

ForestModel fit_forest(const Matrix& x, std::span<const int> y, std::size_t n_classes, const ForestParams& params,
                       std::uint64_t seed) {
  if (params.n_trees < 1) throw InvalidArgument("fit_forest: n_trees must be >= 1");
  if (x.rows() == 0 || x.cols() == 0) throw InvalidArgument("fit_forest: empty input");

  ForestModel model;
  model.n_classes = n_classes;
  model.n_features = x.cols();
  cart::TreeParams tree_params = params.tree;
  tree_params.criterion = cart::Criterion::gini;
  tree_params.feature_subsample =
      params.max_features ? *params.max_features
                          : static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(x.cols()))));

  std::vector<double> w(x.rows(), 1.0);
  for (int t = 0; t < params.n_trees; ++t) {
    const auto tree_seed = derive_seed(seed, static_cast<std::uint64_t>(t));
    if (params.bootstrap) {
      const auto counts = bootstrap_counts(x.rows(), tree_seed);
      for (std::size_t i = 0; i < x.rows(); ++i) w[i] = counts[i];
    }
    model.trees.push_back(cart::fit_cart_classifier(x, y, n_classes, w, tree_params, tree_seed));
    model.seeds.push_back(tree_seed);
  }
  return model;
}

ClassPrediction predict_forest(const ForestModel& model, const Matrix& x) {
  if (model.trees.empty()) throw InvalidArgument("predict_forest: empty forest");
  if (x.cols() != model.n_features) {
    throw InvalidArgument("predict_forest: expected " + std::to_string(model.n_features) + " columns, got " +
                          std::to_string(x.cols()));
  }
  ClassPrediction out;
  out.proba = Matrix(x.rows(), model.n_classes);
  const double inv = 1.0 / static_cast<double>(model.trees.size());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    auto row = out.proba.row(r);
    for (const auto& t : model.trees) {
      const auto v = t.leaf_value(x.row(r));
      for (std::size_t c = 0; c < row.size(); ++c) row[c] += v[c];
    }
    for (double& v : row) v *= inv;
  }
  out.labels = labels_from_scores(out.proba);
  return out;
}

nlohmann::ordered_json to_json(const ForestModel& model) {
  nlohmann::ordered_json j;
  j["kind"] = "forest";
  j["n_classes"] = model.n_classes;
  j["n_features"] = model.n_features;
  j["seeds"] = model.seeds;
  j["trees"] = nlohmann::ordered_json::array();
  for (const auto& t : model.trees) j["trees"].push_back(cart::to_json(t));
  return j;
}

ForestModel forest_from_json(const nlohmann::ordered_json& j) {
  if (j.at("kind") != "forest") throw ParseError("forest_from_json: wrong kind");
  ForestModel m;
  m.n_classes = j.at("n_classes").get<std::size_t>();
  m.n_features = j.at("n_features").get<std::size_t>();
  m.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  for (const auto& t : j.at("trees")) m.trees.push_back(cart::tree_from_json(t));
  return m;
}

}  // namespace wxbench::ensembles

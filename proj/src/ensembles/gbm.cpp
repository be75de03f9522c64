#include "wxbench/ensembles/gbm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wxbench/core/errors.hpp"
#include "wxbench/core/random.hpp"

namespace wxbench::ensembles {

Matrix softmax_rows(const Matrix& scores) {
  Matrix p(scores.rows(), scores.cols());
  for (std::size_t r = 0; r < scores.rows(); ++r) {
    const auto s = scores.row(r);
    const double m = *std::max_element(s.begin(), s.end());
    double z = 0.0;
    auto out = p.row(r);
    for (std::size_t k = 0; k < s.size(); ++k) z += (out[k] = std::exp(s[k] - m));
    for (double& v : out) v /= z;
  }
  return p;
}

double softmax_cross_entropy(const Matrix& scores, std::span<const int> y) {
  double total = 0.0;
  for (std::size_t r = 0; r < scores.rows(); ++r) {
    const auto s = scores.row(r);
    const double m = *std::max_element(s.begin(), s.end());
    double z = 0.0;
    for (double v : s) z += std::exp(v - m);
    total += m + std::log(z) - s[static_cast<std::size_t>(y[r])];
  }
  return total / static_cast<double>(scores.rows());
}

GbmModel fit_gbm(const Matrix& x, std::span<const int> y, std::size_t n_classes, const GbmParams& params,
                 std::uint64_t seed) {
  if (params.rounds < 1) throw InvalidArgument("fit_gbm: rounds must be >= 1");
  if (!(params.learning_rate > 0.0 && params.learning_rate <= 1.0)) {
    throw InvalidArgument("fit_gbm: learning_rate must be in (0, 1]");
  }
  if (n_classes < 2) throw InvalidArgument("fit_gbm: need K >= 2");
  if (y.size() != x.rows() || y.empty()) throw InvalidArgument("fit_gbm: label count does not match rows");
  if (count_distinct(y) < 2) throw ModelError("fit_gbm: training labels contain a single class");

  const std::size_t n = x.rows();
  const std::size_t k = n_classes;

  GbmModel model;
  model.learning_rate = params.learning_rate;
  model.n_classes = k;
  model.n_features = x.cols();
  model.init_scores.assign(k, 0.0);
  {
    std::vector<double> counts(k, 0.0);
    for (int label : y) {
      if (label < 0 || static_cast<std::size_t>(label) >= k) throw InvalidArgument("fit_gbm: label out of range");
      counts[static_cast<std::size_t>(label)] += 1.0;
    }
    for (std::size_t c = 0; c < k; ++c) model.init_scores[c] = std::log(counts[c] / static_cast<double>(n) + 1e-12);
  }

  Matrix f(n, k);
  for (std::size_t r = 0; r < n; ++r) std::copy(model.init_scores.begin(), model.init_scores.end(), f.row(r).begin());
  model.training_loss.push_back(softmax_cross_entropy(f, y));

  cart::TreeParams tree_params = params.tree;
  tree_params.criterion = cart::Criterion::mse;
  std::vector<double> residual(n);

  for (int round = 0; round < params.rounds; ++round) {
    const Matrix p = softmax_rows(f);
    std::vector<cart::DecisionTree> trees;
    trees.reserve(k);
    for (std::size_t c = 0; c < k; ++c) {
      for (std::size_t i = 0; i < n; ++i) residual[i] = (static_cast<std::size_t>(y[i]) == c ? 1.0 : 0.0) - p(i, c);
      const auto tree_seed = derive_seed(derive_seed(seed, static_cast<std::uint64_t>(round)), c);
      trees.push_back(cart::fit_cart_regressor(x, residual, {}, tree_params, tree_seed));
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < k; ++c) f(i, c) += params.learning_rate * trees[c].leaf_value(x.row(i))[0];
    }
    model.stages.push_back(std::move(trees));
    model.training_loss.push_back(softmax_cross_entropy(f, y));
  }
  return model;
}

Matrix gbm_raw_scores(const GbmModel& model, const Matrix& x) {
  if (x.cols() != model.n_features) {
    throw InvalidArgument("predict_gbm: expected " + std::to_string(model.n_features) + " columns, got " +
                          std::to_string(x.cols()));
  }
  Matrix f(x.rows(), model.n_classes);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    auto row = f.row(r);
    std::copy(model.init_scores.begin(), model.init_scores.end(), row.begin());
    for (const auto& stage : model.stages) {
      for (std::size_t c = 0; c < model.n_classes; ++c) row[c] += model.learning_rate * stage[c].leaf_value(x.row(r))[0];
    }
  }
  return f;
}

ClassPrediction predict_gbm(const GbmModel& model, const Matrix& x) {
  ClassPrediction out;
  out.proba = softmax_rows(gbm_raw_scores(model, x));
  out.labels = labels_from_scores(out.proba);
  return out;
}

nlohmann::ordered_json to_json(const GbmModel& model) {
  nlohmann::ordered_json j;
  j["kind"] = "gbm";
  j["n_classes"] = model.n_classes;
  j["n_features"] = model.n_features;
  j["learning_rate"] = model.learning_rate;
  j["init_scores"] = model.init_scores;
  j["stages"] = nlohmann::ordered_json::array();
  for (const auto& stage : model.stages) {
    auto trees = nlohmann::ordered_json::array();
    for (const auto& t : stage) trees.push_back(cart::to_json(t));
    j["stages"].push_back(std::move(trees));
  }
  j["training_loss"] = model.training_loss;
  return j;
}

GbmModel gbm_from_json(const nlohmann::ordered_json& j) {
  if (j.at("kind") != "gbm") throw ParseError("gbm_from_json: wrong kind");
  GbmModel m;
  m.n_classes = j.at("n_classes").get<std::size_t>();
  m.n_features = j.at("n_features").get<std::size_t>();
  m.learning_rate = j.at("learning_rate").get<double>();
  m.init_scores = j.at("init_scores").get<std::vector<double>>();
  for (const auto& stage : j.at("stages")) {
    std::vector<cart::DecisionTree> trees;
    for (const auto& t : stage) trees.push_back(cart::tree_from_json(t));
    m.stages.push_back(std::move(trees));
  }
  if (j.contains("training_loss")) m.training_loss = j.at("training_loss").get<std::vector<double>>();
  return m;
}

}  // namespace wxbench::ensembles

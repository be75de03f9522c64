#include "wxbench/ensembles/adaboost.hpp"

#include <cmath>
#include <string>

#include "wxbench/core/errors.hpp"
#include "wxbench/core/random.hpp"

namespace wxbench::ensembles {

double samme_alpha(double e, std::size_t k) {
  return std::log((1.0 - e) / e) + std::log(static_cast<double>(k) - 1.0);
}

AdaBoostModel fit_adaboost(const Matrix& x, std::span<const int> y, std::size_t n_classes, const AdaBoostParams& params,
                           std::uint64_t seed, const AdaBoostObserver& observer) {
  if (n_classes < 2) throw InvalidArgument("fit_adaboost: need K >= 2");
  if (params.rounds < 1) throw InvalidArgument("fit_adaboost: rounds must be >= 1");
  if (y.size() != x.rows() || y.empty()) throw InvalidArgument("fit_adaboost: label count does not match rows");
  if (count_distinct(y) < 2) throw ModelError("fit_adaboost: training labels contain a single class");

  const std::size_t n = x.rows();
  const double k = static_cast<double>(n_classes);
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  std::vector<std::uint8_t> miss(n);

  AdaBoostModel model;
  model.n_classes = n_classes;
  model.n_features = x.cols();

  for (int round = 0; round < params.rounds; ++round) {
    auto tree = cart::fit_cart_classifier(x, y, n_classes, w, params.tree, derive_seed(seed, static_cast<std::uint64_t>(round)));
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto pred = static_cast<int>(argmax(tree.leaf_value(x.row(i))));
      miss[i] = pred != y[i] ? 1 : 0;
      if (miss[i]) e += w[i];
    }
    if (e >= 1.0 - 1.0 / k) break;

    if (e <= 0.0) {
      model.stages.push_back({std::move(tree), kMaxAdaBoostAlpha, 0.0});
      if (observer) observer(static_cast<std::size_t>(round), model.stages.back(), w);
      break;
    }

    const double alpha = samme_alpha(e, n_classes);
    const double boost = std::exp(alpha);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (miss[i]) w[i] *= boost;
      total += w[i];
    }
    for (double& wi : w) wi /= total;
    model.stages.push_back({std::move(tree), alpha, e});
    if (observer) observer(static_cast<std::size_t>(round), model.stages.back(), w);
  }

  if (model.stages.empty()) throw ModelError("fit_adaboost: first weak learner is no better than chance");
  return model;
}

ClassPrediction predict_adaboost(const AdaBoostModel& model, const Matrix& x) {
  if (model.stages.empty()) throw InvalidArgument("predict_adaboost: model has no stages");
  if (x.cols() != model.n_features) {
    throw InvalidArgument("predict_adaboost: expected " + std::to_string(model.n_features) + " columns, got " +
                          std::to_string(x.cols()));
  }
  ClassPrediction out;
  out.proba = Matrix(x.rows(), model.n_classes);
  double total_alpha = 0.0;
  for (const auto& s : model.stages) total_alpha += s.alpha;
  for (std::size_t r = 0; r < x.rows(); ++r) {
    auto scores = out.proba.row(r);
    for (const auto& s : model.stages) scores[argmax(s.tree.leaf_value(x.row(r)))] += s.alpha;
  }
  out.labels = labels_from_scores(out.proba);
  for (double& v : out.proba.data()) v /= total_alpha;
  return out;
}

nlohmann::ordered_json to_json(const AdaBoostModel& model) {
  nlohmann::ordered_json j;
  j["kind"] = "adaboost";
  j["n_classes"] = model.n_classes;
  j["n_features"] = model.n_features;
  j["stages"] = nlohmann::ordered_json::array();
  for (const auto& s : model.stages) {
    j["stages"].push_back({{"alpha", s.alpha}, {"error", s.error}, {"tree", cart::to_json(s.tree)}});
  }
  return j;
}

AdaBoostModel adaboost_from_json(const nlohmann::ordered_json& j) {
  if (j.at("kind") != "adaboost") throw ParseError("adaboost_from_json: wrong kind");
  AdaBoostModel m;
  m.n_classes = j.at("n_classes").get<std::size_t>();
  m.n_features = j.at("n_features").get<std::size_t>();
  for (const auto& s : j.at("stages")) {
    m.stages.push_back({cart::tree_from_json(s.at("tree")), s.at("alpha").get<double>(), s.at("error").get<double>()});
  }
  return m;
}

}  // namespace wxbench::ensembles

#include "wxbench/learners/knn.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "wxbench/core/errors.hpp"

namespace wxbench::learners {

KnnModel fit_knn(const Matrix& x, std::span<const int> y, std::size_t n_classes, std::size_t k) {
  if (x.rows() != y.size()) throw InvalidArgument("fit_knn: label count does not match rows");
  if (k == 0) throw InvalidArgument("fit_knn: k must be >= 1");
  if (k > x.rows()) {
    throw InvalidArgument("fit_knn: k=" + std::to_string(k) + " exceeds " + std::to_string(x.rows()) + " training rows");
  }
  for (int l : y) {
    if (l < 0 || static_cast<std::size_t>(l) >= n_classes) throw InvalidArgument("fit_knn: label out of range");
  }
  return KnnModel{x, Labels(y.begin(), y.end()), k, n_classes};
}

ClassPrediction predict_knn(const KnnModel& model, const Matrix& x) {
  if (x.cols() != model.x.cols()) {
    throw InvalidArgument("predict_knn: expected " + std::to_string(model.x.cols()) + " columns, got " +
                          std::to_string(x.cols()));
  }
  const std::size_t n = model.x.rows();
  ClassPrediction out;
  out.proba = Matrix(x.rows(), model.n_classes);
  out.labels.resize(x.rows());
  std::vector<std::pair<double, std::size_t>> dist(n);
  std::vector<double> votes(model.n_classes);

  for (std::size_t q = 0; q < x.rows(); ++q) {
    const auto query = x.row(q);
    for (std::size_t i = 0; i < n; ++i) {
      const auto t = model.x.row(i);
      double d = 0.0;
      for (std::size_t c = 0; c < t.size(); ++c) {
        const double diff = query[c] - t[c];
        d += diff * diff;
      }
      dist[i] = {d, i};
    }
    std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(model.k - 1), dist.end());
    std::fill(votes.begin(), votes.end(), 0.0);
    for (std::size_t j = 0; j < model.k; ++j) votes[static_cast<std::size_t>(model.y[dist[j].second])] += 1.0;
    out.labels[q] = static_cast<int>(argmax(votes));
    auto row = out.proba.row(q);
    for (std::size_t c = 0; c < votes.size(); ++c) row[c] = votes[c] / static_cast<double>(model.k);
  }
  return out;
}

nlohmann::ordered_json to_json(const KnnModel& model) {
  nlohmann::ordered_json j;
  j["kind"] = "knn";
  j["k"] = model.k;
  j["n_classes"] = model.n_classes;
  j["metric"] = "euclidean";
  j["rows"] = model.x.rows();
  j["cols"] = model.x.cols();
  j["x"] = std::vector<double>(model.x.data().begin(), model.x.data().end());
  j["y"] = model.y;
  return j;
}

KnnModel knn_from_json(const nlohmann::ordered_json& j) {
  if (j.at("kind") != "knn") throw ParseError("knn_from_json: wrong kind");
  KnnModel m;
  m.k = j.at("k").get<std::size_t>();
  m.n_classes = j.at("n_classes").get<std::size_t>();
  m.x = Matrix(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
  const auto flat = j.at("x").get<std::vector<double>>();
  if (flat.size() != m.x.data().size()) throw ParseError("knn_from_json: shape mismatch");
  std::copy(flat.begin(), flat.end(), m.x.data().begin());
  m.y = j.at("y").get<Labels>();
  return m;
}

}  // namespace wxbench::learners

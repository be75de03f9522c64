#include "wxbench/learners/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wxbench/core/errors.hpp"
#include "wxbench/core/random.hpp"

namespace wxbench::learners {
namespace {

/// Per-sample activations; acts[0] is the input.
struct Trace {
  std::vector<std::vector<double>> pre{};   // z_l, l = 1..L
  std::vector<std::vector<double>> acts{};  // a_l, l = 0..L (a_L = softmax)
};

void forward(const MlpModel& m, std::span<const double> x, Trace& t) {
  const std::size_t layers = m.weights.size();
  t.acts.resize(layers + 1);
  t.pre.resize(layers);
  t.acts[0].assign(x.begin(), x.end());
  for (std::size_t l = 0; l < layers; ++l) {
    const Matrix& w = m.weights[l];
    auto& z = t.pre[l];
    z.assign(m.biases[l].begin(), m.biases[l].end());
    const auto& a = t.acts[l];
    for (std::size_t o = 0; o < w.rows(); ++o) {
      const auto wr = w.row(o);
      double s = 0.0;
      for (std::size_t i = 0; i < wr.size(); ++i) s += wr[i] * a[i];
      z[o] += s;
    }
    auto& next = t.acts[l + 1];
    next.resize(z.size());
    if (l + 1 < layers) {
      for (std::size_t o = 0; o < z.size(); ++o) next[o] = z[o] > 0.0 ? z[o] : 0.0;
    } else {
      const double mx = *std::max_element(z.begin(), z.end());
      double sum = 0.0;
      for (std::size_t o = 0; o < z.size(); ++o) sum += (next[o] = std::exp(z[o] - mx));
      for (double& v : next) v /= sum;
    }
  }
}

double sample_loss(const Trace& t, int label) {
  const auto& z = t.pre.back();
  const double mx = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double v : z) sum += std::exp(v - mx);
  return mx + std::log(sum) - z[static_cast<std::size_t>(label)];
}

MlpGradients zero_like(const MlpModel& m) {
  MlpGradients g;
  for (std::size_t l = 0; l < m.weights.size(); ++l) {
    g.weights.emplace_back(m.weights[l].rows(), m.weights[l].cols(), 0.0);
    g.biases.emplace_back(m.biases[l].size(), 0.0);
  }
  return g;
}

/// Adds scale * d(loss_i)/d(theta) for one sample into g.
void accumulate(const MlpModel& m, const Trace& t, int label, double scale, MlpGradients& g,
                std::vector<double>& delta, std::vector<double>& prev_delta) {
  const std::size_t layers = m.weights.size();
  delta = t.acts[layers];
  delta[static_cast<std::size_t>(label)] -= 1.0;
  for (double& d : delta) d *= scale;
  for (std::size_t l = layers; l-- > 0;) {
    const auto& a = t.acts[l];
    Matrix& gw = g.weights[l];
    for (std::size_t o = 0; o < delta.size(); ++o) {
      const double d = delta[o];
      if (d == 0.0) continue;
      g.biases[l][o] += d;
      auto row = gw.row(o);
      for (std::size_t i = 0; i < a.size(); ++i) row[i] += d * a[i];
    }
    if (l == 0) break;
    const Matrix& w = m.weights[l];
    prev_delta.assign(w.cols(), 0.0);
    for (std::size_t o = 0; o < delta.size(); ++o) {
      const double d = delta[o];
      if (d == 0.0) continue;
      const auto wr = w.row(o);
      for (std::size_t i = 0; i < wr.size(); ++i) prev_delta[i] += wr[i] * d;
    }
    const auto& z = t.pre[l - 1];
    for (std::size_t i = 0; i < prev_delta.size(); ++i) {
      if (!(z[i] > 0.0)) prev_delta[i] = 0.0;
    }
    std::swap(delta, prev_delta);
  }
}

void check_inputs(const MlpModel& m, const Matrix& x, std::span<const int> y) {
  if (x.cols() != m.n_inputs()) {
    throw InvalidArgument("mlp: expected " + std::to_string(m.n_inputs()) + " columns, got " + std::to_string(x.cols()));
  }
  if (y.size() != x.rows()) throw InvalidArgument("mlp: label count does not match rows");
  for (int l : y) {
    if (l < 0 || static_cast<std::size_t>(l) >= m.n_classes()) throw InvalidArgument("mlp: label out of range");
  }
}

/// Every parameter in a fixed order, for finite differences.
std::vector<double*> parameter_refs(MlpModel& m) {
  std::vector<double*> out;
  for (std::size_t l = 0; l < m.weights.size(); ++l) {
    for (double& v : m.weights[l].data()) out.push_back(&v);
    for (double& v : m.biases[l]) out.push_back(&v);
  }
  return out;
}

std::vector<double> flatten(const MlpGradients& g) {
  std::vector<double> out;
  for (std::size_t l = 0; l < g.weights.size(); ++l) {
    out.insert(out.end(), g.weights[l].data().begin(), g.weights[l].data().end());
    out.insert(out.end(), g.biases[l].begin(), g.biases[l].end());
  }
  return out;
}

}  // namespace

std::size_t MlpModel::parameter_count() const noexcept {
  std::size_t n = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) n += weights[l].data().size() + biases[l].size();
  return n;
}

MlpModel init_mlp(std::span<const std::size_t> layer_sizes, std::uint64_t seed) {
  if (layer_sizes.size() < 3) throw InvalidArgument("init_mlp: need input, at least one hidden, and output layer");
  for (auto s : layer_sizes) {
    if (s == 0) throw InvalidArgument("init_mlp: layer size 0");
  }
  Rng rng(seed);
  MlpModel m;
  m.layer_sizes.assign(layer_sizes.begin(), layer_sizes.end());
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    const std::size_t fan_in = layer_sizes[l];
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in));
    Matrix w(layer_sizes[l + 1], fan_in);
    for (double& v : w.data()) v = rng.uniform(-limit, limit);
    m.weights.push_back(std::move(w));
    m.biases.emplace_back(layer_sizes[l + 1], 0.0);
  }
  return m;
}

double mlp_loss(const MlpModel& model, const Matrix& x, std::span<const int> y) {
  check_inputs(model, x, y);
  Trace t;
  double total = 0.0;
  for (std::size_t r = 0; r < x.rows(); ++r) {
    forward(model, x.row(r), t);
    total += sample_loss(t, y[r]);
  }
  return total / static_cast<double>(x.rows());
}

MlpGradients mlp_backprop(const MlpModel& model, const Matrix& x, std::span<const int> y) {
  check_inputs(model, x, y);
  auto g = zero_like(model);
  Trace t;
  std::vector<double> delta, prev;
  const double scale = 1.0 / static_cast<double>(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    forward(model, x.row(r), t);
    accumulate(model, t, y[r], scale, g, delta, prev);
  }
  return g;
}

MlpTrainResult train_mlp(MlpModel model, const Matrix& x, std::span<const int> y, const MlpTrainParams& params,
                         std::uint64_t seed, const EpochOrder& order) {
  check_inputs(model, x, y);
  if (params.batch_size < 1) throw InvalidArgument("train_mlp: batch_size must be >= 1");
  if (params.epochs < 0) throw InvalidArgument("train_mlp: epochs must be >= 0");
  if (x.rows() == 0) throw InvalidArgument("train_mlp: no training rows");

  MlpTrainResult result;
  auto velocity = zero_like(model);
  auto grad = zero_like(model);
  Trace t;
  std::vector<double> delta, prev;
  const std::size_t n = x.rows();

  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    std::vector<std::size_t> rows;
    if (order) {
      rows = order(epoch);
      if (rows.size() != n) throw InvalidArgument("train_mlp: epoch order must visit every row once");
    } else {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(epoch)));
      rows = rng.permutation(n);
    }

    for (std::size_t begin = 0; begin < n; begin += params.batch_size) {
      const std::size_t end = std::min(n, begin + params.batch_size);
      for (std::size_t l = 0; l < grad.weights.size(); ++l) {
        std::fill(grad.weights[l].data().begin(), grad.weights[l].data().end(), 0.0);
        std::fill(grad.biases[l].begin(), grad.biases[l].end(), 0.0);
      }
      const double scale = 1.0 / static_cast<double>(end - begin);
      for (std::size_t p = begin; p < end; ++p) {
        forward(model, x.row(rows[p]), t);
        accumulate(model, t, y[rows[p]], scale, grad, delta, prev);
      }
      for (std::size_t l = 0; l < grad.weights.size(); ++l) {
        auto v = velocity.weights[l].data();
        auto g = grad.weights[l].data();
        auto w = model.weights[l].data();
        for (std::size_t i = 0; i < w.size(); ++i) {
          v[i] = params.momentum * v[i] - params.learning_rate * g[i];
          w[i] += v[i];
        }
        auto& vb = velocity.biases[l];
        const auto& gb = grad.biases[l];
        auto& b = model.biases[l];
        for (std::size_t i = 0; i < b.size(); ++i) {
          vb[i] = params.momentum * vb[i] - params.learning_rate * gb[i];
          b[i] += vb[i];
        }
      }
    }

    const double loss = mlp_loss(model, x, y);
    if (std::isnan(loss)) {
      throw ModelError("train_mlp: loss became NaN at epoch " + std::to_string(epoch + 1) +
                       " (learning rate too large?)");
    }
    result.loss_trace.push_back(loss);
  }
  result.model = std::move(model);
  return result;
}

double gradient_check(const MlpModel& model, const Matrix& x, std::span<const int> y, double h) {
  if (x.rows() == 0 || x.rows() > 8) throw InvalidArgument("gradient_check: use a batch of 1..8 rows");
  const auto analytic = flatten(mlp_backprop(model, x, y));
  MlpModel probe = model;
  const auto refs = parameter_refs(probe);
  double worst = 0.0;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    const double saved = *refs[i];
    *refs[i] = saved + h;
    const double up = mlp_loss(probe, x, y);
    *refs[i] = saved - h;
    const double down = mlp_loss(probe, x, y);
    *refs[i] = saved;
    const double numeric = (up - down) / (2.0 * h);
    const double err = std::abs(analytic[i] - numeric) / std::max(std::abs(analytic[i]) + std::abs(numeric), 1e-8);
    worst = std::max(worst, err);
  }
  return worst;
}

ClassPrediction predict_mlp(const MlpModel& model, const Matrix& x) {
  if (x.cols() != model.n_inputs()) {
    throw InvalidArgument("predict_mlp: expected " + std::to_string(model.n_inputs()) + " columns, got " +
                          std::to_string(x.cols()));
  }
  ClassPrediction out;
  out.proba = Matrix(x.rows(), model.n_classes());
  Trace t;
  for (std::size_t r = 0; r < x.rows(); ++r) {
    forward(model, x.row(r), t);
    std::copy(t.acts.back().begin(), t.acts.back().end(), out.proba.row(r).begin());
  }
  out.labels = labels_from_scores(out.proba);
  return out;
}

nlohmann::ordered_json to_json(const MlpModel& model) {
  nlohmann::ordered_json j;
  j["kind"] = "mlp";
  j["activation"] = "relu";
  j["output"] = "softmax";
  j["layer_sizes"] = model.layer_sizes;
  j["weights"] = nlohmann::ordered_json::array();
  j["biases"] = nlohmann::ordered_json::array();
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    j["weights"].push_back(std::vector<double>(model.weights[l].data().begin(), model.weights[l].data().end()));
    j["biases"].push_back(model.biases[l]);
  }
  return j;
}

MlpModel mlp_from_json(const nlohmann::ordered_json& j) {
  if (j.at("kind") != "mlp") throw ParseError("mlp_from_json: wrong kind");
  MlpModel m;
  m.layer_sizes = j.at("layer_sizes").get<std::vector<std::size_t>>();
  for (std::size_t l = 0; l + 1 < m.layer_sizes.size(); ++l) {
    const auto flat = j.at("weights").at(l).get<std::vector<double>>();
    Matrix w(m.layer_sizes[l + 1], m.layer_sizes[l]);
    if (flat.size() != w.data().size()) throw ParseError("mlp_from_json: weight shape mismatch");
    std::copy(flat.begin(), flat.end(), w.data().begin());
    m.weights.push_back(std::move(w));
    m.biases.push_back(j.at("biases").at(l).get<std::vector<double>>());
  }
  return m;
}

}  // namespace wxbench::learners

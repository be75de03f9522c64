/**
 * @file mlp.hpp
 * @brief Fully connected ReLU network with a softmax output, trained by
 * mini-batch SGD with momentum on the mean cross-entropy.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <json.hpp>

#include "wxbench/core/matrix.hpp"
#include "wxbench/core/prediction.hpp"

namespace wxbench::learners {

struct MlpModel {
  /// [D, H1, ..., K]
  std::vector<std::size_t> layer_sizes{};
  /// weights[l] has shape layer_sizes[l+1] x layer_sizes[l].
  std::vector<Matrix> weights{};
  std::vector<std::vector<double>> biases{};

  [[nodiscard]] std::size_t n_inputs() const noexcept { return layer_sizes.front(); }
  [[nodiscard]] std::size_t n_classes() const noexcept { return layer_sizes.back(); }
  [[nodiscard]] std::size_t parameter_count() const noexcept;
  bool operator==(const MlpModel&) const = default;
};

/// Weights ~ U(-sqrt(6/fan_in), +sqrt(6/fan_in)), biases 0. Needs at least one
/// hidden layer and no zero-width layer.
MlpModel init_mlp(std::span<const std::size_t> layer_sizes, std::uint64_t seed);

struct MlpTrainParams {
  int epochs{200};
  std::size_t batch_size{32};
  double learning_rate{0.01};
  double momentum{0.9};
};

/// Row visiting order for an epoch. The default is a permutation drawn from
/// the training seed.
using EpochOrder = std::function<std::vector<std::size_t>(int epoch)>;

struct MlpTrainResult {
  MlpModel model{};
  /// Mean training cross-entropy after each epoch.
  std::vector<double> loss_trace{};
};

/// Throws ModelError naming the epoch if the loss becomes NaN.
MlpTrainResult train_mlp(MlpModel model, const Matrix& x, std::span<const int> y, const MlpTrainParams& params,
                         std::uint64_t seed, const EpochOrder& order = {});

/// Gradients of the mean batch cross-entropy, shaped like the model's parameters.
struct MlpGradients {
  std::vector<Matrix> weights{};
  std::vector<std::vector<double>> biases{};
};

double mlp_loss(const MlpModel& model, const Matrix& x, std::span<const int> y);
MlpGradients mlp_backprop(const MlpModel& model, const Matrix& x, std::span<const int> y);

/// max |g_bp - g_fd| / max(|g_bp| + |g_fd|, 1e-8) over every parameter, with
/// central differences of step `h`. Batches are limited to 8 rows.
double gradient_check(const MlpModel& model, const Matrix& x, std::span<const int> y, double h = 1e-5);

ClassPrediction predict_mlp(const MlpModel& model, const Matrix& x);

nlohmann::ordered_json to_json(const MlpModel& model);
MlpModel mlp_from_json(const nlohmann::ordered_json& j);

}  // namespace wxbench::learners

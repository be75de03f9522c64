/**
 * @file classifier.hpp
 * @brief One interface over every trained model so the benchmark and the
 * stacking layer can treat them alike.
 */
#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "wxbench/cart/tree.hpp"
#include "wxbench/core/matrix.hpp"
#include "wxbench/core/prediction.hpp"
#include "wxbench/ensembles/adaboost.hpp"
#include "wxbench/ensembles/forest.hpp"
#include "wxbench/ensembles/gbm.hpp"
#include "wxbench/learners/knn.hpp"
#include "wxbench/learners/mlp.hpp"

namespace wxbench::models {

struct CartConfig {
  cart::TreeParams tree{.max_depth = 6, .min_samples_leaf = 1, .criterion = cart::Criterion::gini};
};
struct AdaBoostConfig {
  ensembles::AdaBoostParams params{};
};
struct GbmConfig {
  ensembles::GbmParams params{};
};
struct ForestConfig {
  ensembles::ForestParams params{};
};
struct MlpConfig {
  std::vector<std::size_t> hidden{64};
  learners::MlpTrainParams train{};
};
struct KnnConfig {
  std::size_t k{15};
};

using ModelConfig = std::variant<CartConfig, AdaBoostConfig, GbmConfig, ForestConfig, MlpConfig, KnnConfig>;

/// Short identifier: cart, adaboost, gbm, forest, mlp, knn.
std::string_view model_kind(const ModelConfig& config) noexcept;
/// Default-configured model for a short identifier; throws InvalidArgument when unknown.
ModelConfig default_config(std::string_view kind);

nlohmann::ordered_json config_to_json(const ModelConfig& config);
/// Inverse of config_to_json; absent fields keep their defaults.
ModelConfig config_from_json(const nlohmann::ordered_json& j);

class Classifier {
 public:
  virtual ~Classifier() = default;
  [[nodiscard]] virtual std::string_view kind() const noexcept = 0;
  [[nodiscard]] virtual std::size_t n_classes() const noexcept = 0;
  [[nodiscard]] virtual std::size_t n_features() const noexcept = 0;
  [[nodiscard]] virtual ClassPrediction predict(const Matrix& x) const = 0;
  [[nodiscard]] virtual nlohmann::ordered_json to_json() const = 0;
};

/// Trained models are immutable and shared freely.
using TrainedModel = std::shared_ptr<const Classifier>;

TrainedModel fit_model(const ModelConfig& config, const Matrix& x, std::span<const int> y, std::size_t n_classes,
                       std::uint64_t seed);

/// Wraps an already-trained model of one of the six base kinds.
TrainedModel wrap(cart::DecisionTree tree);
TrainedModel wrap(ensembles::AdaBoostModel model);
TrainedModel wrap(ensembles::GbmModel model);
TrainedModel wrap(ensembles::ForestModel model);
TrainedModel wrap(learners::MlpModel model);
TrainedModel wrap(learners::KnnModel model);

/// Restores any of the six base kinds from its structural JSON form.
TrainedModel base_model_from_json(const nlohmann::ordered_json& j);

}  // namespace wxbench::models

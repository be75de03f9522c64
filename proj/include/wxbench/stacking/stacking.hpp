/**
 * @file stacking.hpp
 * @brief Two-level stacked generalization with out-of-fold meta-features.
 *
 * Rows are shuffled with the spec seed and cut into n_folds near-equal
 * contiguous folds. Every base learner is trained once per fold on the rows
 * outside that fold and scores the rows inside it, so each row's
 * meta-features come from models that never saw the row. The meta-learner is
 * trained on those out-of-fold class probabilities (B blocks of K columns, in
 * spec order); the base learners are then refitted on all rows for inference.
 */
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "wxbench/core/matrix.hpp"
#include "wxbench/core/prediction.hpp"
#include "wxbench/models/classifier.hpp"

namespace wxbench::stacking {

struct StackingSpec {
  std::vector<models::ModelConfig> base_learners{models::GbmConfig{}, models::AdaBoostConfig{}, models::CartConfig{}};
  models::ModelConfig meta_learner{models::ForestConfig{}};
  std::size_t n_folds{5};
  std::uint64_t seed{0};
};

/// Throws InvalidArgument unless there are >= 2 bases, n_folds >= 2, and the
/// meta-learner is a forest, mlp or knn.
void validate_spec(const StackingSpec& spec);

/// Which rows trained the model that scored which rows.
struct FoldRecord {
  std::size_t fold{};
  std::size_t base{};
  std::vector<std::size_t> train_rows{};
  std::vector<std::size_t> scored_rows{};
};

struct OofResult {
  Matrix meta{};
  std::vector<std::size_t> fold_of{};
  std::vector<FoldRecord> log{};
};

/// Fold membership: seeded permutation of [0, n) cut into near-equal runs.
std::vector<std::vector<std::size_t>> make_folds(std::size_t n, std::size_t n_folds, std::uint64_t seed);

/// Throws DataError naming the fold and class when a fold's training rows lack a class.
OofResult oof_meta_features(const StackingSpec& spec, const Matrix& x, std::span<const int> y, std::size_t n_classes);

/// Out-of-fold predictions plus bases refitted on every row. Shared by stacks
/// that differ only in their meta-learner.
struct BaseLayer {
  OofResult oof{};
  std::vector<models::TrainedModel> bases{};
  /// Accuracy of each base's out-of-fold argmax against the labels.
  std::vector<double> oof_accuracy{};
};

BaseLayer fit_base_layer(const StackingSpec& spec, const Matrix& x, std::span<const int> y, std::size_t n_classes);

class StackingModel final : public models::Classifier {
 public:
  StackingModel(StackingSpec spec, std::vector<models::TrainedModel> bases, models::TrainedModel meta,
                std::size_t n_classes, std::size_t n_features, std::vector<double> base_oof_accuracy = {});

  std::string_view kind() const noexcept override { return "stacking"; }
  std::size_t n_classes() const noexcept override { return n_classes_; }
  std::size_t n_features() const noexcept override { return n_features_; }
  ClassPrediction predict(const Matrix& x) const override;
  nlohmann::ordered_json to_json() const override;

  /// Base class probabilities concatenated in spec order.
  [[nodiscard]] Matrix meta_features(const Matrix& x) const;
  [[nodiscard]] const StackingSpec& spec() const noexcept { return spec_; }
  [[nodiscard]] const std::vector<models::TrainedModel>& bases() const noexcept { return bases_; }
  [[nodiscard]] const models::TrainedModel& meta() const noexcept { return meta_; }
  [[nodiscard]] const std::vector<double>& base_oof_accuracy() const noexcept { return base_oof_accuracy_; }

 private:
  StackingSpec spec_;
  std::vector<models::TrainedModel> bases_;
  models::TrainedModel meta_;
  std::size_t n_classes_;
  std::size_t n_features_;
  std::vector<double> base_oof_accuracy_;
};

/// Trains the meta-learner of `spec` on a prepared base layer.
std::shared_ptr<const StackingModel> fit_meta(const StackingSpec& spec, const BaseLayer& layer, std::span<const int> y,
                                              std::size_t n_classes, std::size_t n_features);

std::shared_ptr<const StackingModel> fit_stacking(const StackingSpec& spec, const Matrix& x, std::span<const int> y,
                                                  std::size_t n_classes);

ClassPrediction predict_stacking(const StackingModel& model, const Matrix& x);

/// Loads any persisted model, stacked or not.
models::TrainedModel model_from_json(const nlohmann::ordered_json& j);

}  // namespace wxbench::stacking

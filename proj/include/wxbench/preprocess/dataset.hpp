/**
 * @file dataset.hpp
 * @brief End-to-end preparation of one prediction target: feature selection,
 * label lag, split, discretization, and scaling fitted on the training rows.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wxbench/core/matrix.hpp"
#include "wxbench/ingest/weather.hpp"
#include "wxbench/preprocess/features.hpp"
#include "wxbench/preprocess/scaler.hpp"
#include "wxbench/preprocess/split.hpp"
#include "wxbench/preprocess/target.hpp"

namespace wxbench::preprocess {

struct LabeledDataset {
  Matrix features{};
  Labels labels{};
  std::vector<std::string> class_names{};
  std::vector<std::string> feature_names{};
  std::string target_name{};

  [[nodiscard]] std::size_t size() const noexcept { return labels.size(); }
  [[nodiscard]] std::size_t n_classes() const noexcept { return class_names.size(); }
};

/// Throws DataError when a LabeledDataset invariant does not hold.
/// `require_all_classes` additionally demands every class be present.
void validate_dataset(const LabeledDataset& ds, bool require_all_classes);

struct SupervisedRows {
  Matrix features{};
  std::vector<double> target{};
  std::vector<std::string> feature_names{};
  std::vector<ingest::Date> dates{};
};

/// Pairs each day's covariates with the target value `lag` calendar days
/// later; days whose partner is absent from the table are skipped.
SupervisedRows make_supervised(const ingest::WeatherTable& table, Target target, int lag);

struct PrepareOptions {
  Target target{Target::precipitation};
  DiscretizationScheme scheme{PrecipClasses{}};
  int lag{0};
  double test_fraction{0.15};
  std::uint64_t split_seed{0};
};

struct PreparedData {
  LabeledDataset train{};
  LabeledDataset test{};
  SplitIndices split{};
  ScalerParams scaler{};
  Binning binning{};
};

PreparedData prepare_dataset(const ingest::WeatherTable& table, const PrepareOptions& options);

}  // namespace wxbench::preprocess

/**
 * @file run_config.hpp
 * @brief Every protocol choice of a run in one place, stored as flat
 * `key = value` text. All keys are optional; see config/default.cfg for the
 * full list with defaults.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wxbench/ingest/cleaning.hpp"
#include "wxbench/ingest/weather.hpp"
#include "wxbench/models/classifier.hpp"
#include "wxbench/preprocess/features.hpp"
#include "wxbench/preprocess/target.hpp"
#include "wxbench/stacking/stacking.hpp"

namespace wxbench::cli {

struct RunConfig {
  double latitude{23.8103};
  double longitude{90.4125};
  ingest::Date start{std::chrono::year{2003}, std::chrono::January, std::chrono::day{1}};
  ingest::Date end{std::chrono::year{2023}, std::chrono::January, std::chrono::day{1}};
  ingest::CleaningPolicy cleaning{ingest::CleaningPolicy::linear_interpolate};

  preprocess::Target target{preprocess::Target::precipitation};
  preprocess::PrecipClasses precip_classes{};
  int temperature_classes{4};
  int lag{0};
  double test_fraction{0.15};
  std::uint64_t seed{42};

  models::CartConfig cart{};
  models::AdaBoostConfig adaboost{};
  models::GbmConfig gbm{};
  models::ForestConfig forest{};
  models::MlpConfig mlp{};
  models::KnnConfig knn{};

  std::size_t stacking_folds{5};
  std::vector<std::string> stacking_bases{"gbm", "adaboost", "cart"};
  /// Per-stack base lists; empty means `stacking_bases`.
  std::vector<std::string> stack_rf_bases{};
  std::vector<std::string> stack_nn_bases{};
  std::vector<std::string> stack_knn_bases{};

  std::string out_dir{"results"};
  /// Cleaned CSV for analyze/benchmark; `<out_dir>/power_clean.csv` when empty.
  std::string input{};
  /// Raw POWER CSV used by fetch instead of the network.
  std::string offline{};
  std::string power_base_url{"https://power.larc.nasa.gov"};
  int power_attempts{3};
  int power_backoff_ms{1000};

  [[nodiscard]] preprocess::DiscretizationScheme scheme() const;
  [[nodiscard]] std::string resolved_input() const;
  /// Model config for a short kind name using this run's hyperparameters.
  [[nodiscard]] models::ModelConfig model(const std::string& kind) const;
  /// Stacking spec whose meta-learner is `meta_kind` (forest, mlp or knn).
  [[nodiscard]] stacking::StackingSpec stacking_spec(const std::string& meta_kind) const;
};

/// Applies `key = value` lines on top of `base`. Blank lines and `#` comments
/// are ignored. Throws InvalidArgument on unknown keys or bad values, with the
/// line number.
RunConfig parse_config(const std::string& text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

/// Sets one key; throws InvalidArgument on unknown keys or bad values.
void set_config_value(RunConfig& config, const std::string& key, const std::string& value);

/// Every key in a fixed order; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

/// Checks every module precondition that can be checked before data is loaded.
void validate_config(const RunConfig& config);

}  // namespace wxbench::cli

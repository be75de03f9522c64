#include "wxbench/preprocess/features.hpp"

#include <algorithm>
#include <array>

namespace wxbench::preprocess {

using ingest::Feature;

std::string_view to_string(Target t) noexcept { return t == Target::precipitation ? "precipitation" : "temperature"; }

std::optional<Target> target_from_string(std::string_view s) noexcept {
  if (s == "precipitation") return Target::precipitation;
  if (s == "temperature") return Target::temperature;
  return std::nullopt;
}

Feature target_feature(Target t) noexcept { return t == Target::precipitation ? Feature::PRECTOT : Feature::T2M; }

std::vector<Feature> kept_features(Target t) {
  static constexpr std::array<Feature, 1> kPrecipDrops{Feature::PRECTOT};
  static constexpr std::array<Feature, 6> kTempDrops{Feature::T2M,     Feature::T2MWET,  Feature::TS,
                                                     Feature::T2M_RANGE, Feature::T2M_MAX, Feature::T2M_MIN};
  std::vector<Feature> kept;
  for (std::size_t i = 0; i < ingest::kFeatureCount; ++i) {
    const auto f = static_cast<Feature>(i);
    const bool dropped = t == Target::precipitation
                             ? std::find(kPrecipDrops.begin(), kPrecipDrops.end(), f) != kPrecipDrops.end()
                             : std::find(kTempDrops.begin(), kTempDrops.end(), f) != kTempDrops.end();
    if (!dropped) kept.push_back(f);
  }
  return kept;
}

FeatureSelection select_features(const ingest::WeatherTable& table, Target target) {
  const auto kept = kept_features(target);
  std::vector<std::size_t> cols;
  FeatureSelection out;
  for (auto f : kept) {
    cols.push_back(ingest::index_of(f));
    out.names.emplace_back(ingest::feature_name(f));
  }
  out.features = table.feature_matrix().select_cols(cols);
  return out;
}

}  // namespace wxbench::preprocess

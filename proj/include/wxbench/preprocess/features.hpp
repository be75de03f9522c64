#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wxbench/core/matrix.hpp"
#include "wxbench/ingest/weather.hpp"

namespace wxbench::preprocess {

enum class Target { precipitation, temperature };

std::string_view to_string(Target t) noexcept;
std::optional<Target> target_from_string(std::string_view s) noexcept;

/// Raw column the target is derived from: PRECTOT or T2M.
ingest::Feature target_feature(Target t) noexcept;

/// Feature columns kept for a target, in table order. Precipitation drops
/// PRECTOT; temperature drops every same-day thermal alias of T2M
/// (T2M, T2MWET, TS, T2M_RANGE, T2M_MAX, T2M_MIN).
std::vector<ingest::Feature> kept_features(Target t);

struct FeatureSelection {
  Matrix features{};
  std::vector<std::string> names{};
};

FeatureSelection select_features(const ingest::WeatherTable& table, Target target);

}  // namespace wxbench::preprocess

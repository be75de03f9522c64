#include "wxbench/ingest/cleaning.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "wxbench/core/errors.hpp"

namespace wxbench::ingest {
namespace {

void enforce_consistency(WeatherRecord& r) {
  r[Feature::RH2M] = std::clamp(r[Feature::RH2M], 0.0, 100.0);
  double wd = std::fmod(r[Feature::WD10M], 360.0);
  if (wd < 0.0) wd += 360.0;
  if (wd >= 360.0) wd = 0.0;
  r[Feature::WD10M] = wd;
  r[Feature::PRECTOT] = std::max(r[Feature::PRECTOT], 0.0);
  r[Feature::T2M_MIN] = std::min(r[Feature::T2M_MIN], r[Feature::T2M]);
  r[Feature::T2M_MAX] = std::max(r[Feature::T2M_MAX], r[Feature::T2M]);
  r[Feature::WS10M_MIN] = std::min(r[Feature::WS10M_MIN], r[Feature::WS10M]);
  r[Feature::WS10M_MAX] = std::max(r[Feature::WS10M_MAX], r[Feature::WS10M]);
}

}  // namespace

std::string_view to_string(CleaningPolicy p) noexcept {
  return p == CleaningPolicy::drop_row ? "drop_row" : "linear_interpolate";
}

std::optional<CleaningPolicy> cleaning_policy_from_string(std::string_view s) noexcept {
  if (s == "drop_row") return CleaningPolicy::drop_row;
  if (s == "linear_interpolate") return CleaningPolicy::linear_interpolate;
  return std::nullopt;
}

WeatherTable clean_missing(const WeatherTable& table, CleaningPolicy policy) {
  const auto records = table.records();
  if (records.empty()) return table;

  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    const bool any = std::any_of(records.begin(), records.end(),
                                 [f](const WeatherRecord& r) { return r.values[f] != kMissingSentinel; });
    if (!any) throw DataError("feature " + std::string(feature_names()[f]) + " is entirely missing");
  }

  std::vector<WeatherRecord> out;
  if (policy == CleaningPolicy::drop_row) {
    for (const auto& r : records) {
      if (!r.has_missing()) out.push_back(r);
    }
  } else {
    std::size_t keep_begin = 0;
    std::size_t keep_end = records.size();
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      std::size_t first = 0;
      while (records[first].values[f] == kMissingSentinel) ++first;
      std::size_t last = records.size() - 1;
      while (records[last].values[f] == kMissingSentinel) --last;
      keep_begin = std::max(keep_begin, first);
      keep_end = std::min(keep_end, last + 1);
    }
    if (keep_begin < keep_end) out.assign(records.begin() + keep_begin, records.begin() + keep_end);

    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      std::size_t prev = 0;  // out[0] is observed for every feature
      for (std::size_t i = 1; i < out.size(); ++i) {
        if (out[i].values[f] == kMissingSentinel) continue;
        if (i > prev + 1) {
          const double x0 = static_cast<double>(day_number(out[prev].date));
          const double x1 = static_cast<double>(day_number(out[i].date));
          const double y0 = out[prev].values[f];
          const double y1 = out[i].values[f];
          for (std::size_t j = prev + 1; j < i; ++j) {
            const double t = (static_cast<double>(day_number(out[j].date)) - x0) / (x1 - x0);
            out[j].values[f] = y0 + t * (y1 - y0);
          }
        }
        prev = i;
      }
    }
  }

  for (auto& r : out) enforce_consistency(r);
  return WeatherTable(std::move(out), table.source());
}

}  // namespace wxbench::ingest

#pragma once

#include <optional>
#include <string_view>

#include "wxbench/ingest/weather.hpp"

namespace wxbench::ingest {

enum class CleaningPolicy { drop_row, linear_interpolate };

std::string_view to_string(CleaningPolicy p) noexcept;
std::optional<CleaningPolicy> cleaning_policy_from_string(std::string_view s) noexcept;

/// Removes every -999 sentinel.
///
/// `drop_row` discards any day with a missing value. `linear_interpolate` fills
/// interior gaps per feature, linear in calendar time, and drops leading and
/// trailing days that have no bracketing observations. Both policies then
/// enforce record consistency: RH2M clamped to [0, 100], WD10M wrapped into
/// [0, 360), negative PRECTOT set to 0, and the MIN/MAX columns widened to
/// contain the mean. Throws DataError naming a feature with no observed values.
WeatherTable clean_missing(const WeatherTable& table, CleaningPolicy policy = CleaningPolicy::linear_interpolate);

}  // namespace wxbench::ingest

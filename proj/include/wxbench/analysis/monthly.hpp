#pragma once

#include <array>
#include <span>
#include <string>

#include "wxbench/ingest/weather.hpp"

namespace wxbench::analysis {

struct MonthStats {
  int month{};
  std::size_t count{};
  double mean{};
  double median{};
  double q1{};
  double q3{};
};

struct MonthlyProfile {
  std::string feature{};
  std::array<MonthStats, 12> months{};
};

/// Groups days by calendar month across all years; quartiles use linear
/// interpolation between order statistics. Throws DataError naming any month
/// with no rows.
MonthlyProfile monthly_profile(const ingest::WeatherTable& table, ingest::Feature feature);

/// Mean of `feature` over the listed calendar months (1..12).
double mean_over_months(const ingest::WeatherTable& table, ingest::Feature feature, std::span<const int> months);

std::string monthly_csv(const MonthlyProfile& profile);

}  // namespace wxbench::analysis

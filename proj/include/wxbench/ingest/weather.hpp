/**
 * @file weather.hpp
 * @brief Daily station records with the sixteen POWER surface features.
 */
#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wxbench/core/matrix.hpp"

namespace wxbench::ingest {

using Date = std::chrono::year_month_day;

/// Feature order used everywhere (columns, correlation matrix, serialization).
enum class Feature : std::size_t {
  T2M,
  T2MDEW,
  T2MWET,
  TS,
  T2M_RANGE,
  T2M_MAX,
  T2M_MIN,
  QV2M,
  RH2M,
  PRECTOT,
  PS,
  WS10M_RANGE,
  WS10M,
  WD10M,
  WS10M_MAX,
  WS10M_MIN,
};

inline constexpr std::size_t kFeatureCount = 16;
inline constexpr double kMissingSentinel = -999.0;

/// Canonical feature names, in Feature order.
const std::array<std::string_view, kFeatureCount>& feature_names() noexcept;
/// Parameter names understood by the POWER daily API, in Feature order.
const std::array<std::string_view, kFeatureCount>& power_parameter_names() noexcept;

std::string_view feature_name(Feature f) noexcept;
/// Accepts canonical names, POWER parameter names, and the legacy PRECTOT alias.
std::optional<Feature> feature_from_name(std::string_view name) noexcept;

constexpr std::size_t index_of(Feature f) noexcept { return static_cast<std::size_t>(f); }

struct WeatherRecord {
  Date date{};
  std::array<double, kFeatureCount> values{};

  double& operator[](Feature f) noexcept { return values[index_of(f)]; }
  double operator[](Feature f) const noexcept { return values[index_of(f)]; }

  [[nodiscard]] bool has_missing() const noexcept;
  bool operator==(const WeatherRecord&) const = default;
};

/// Physical-consistency violations of a cleaned record; empty when valid.
std::vector<std::string> record_violations(const WeatherRecord& r);

/// Days since 1970-01-01.
long long day_number(const Date& d) noexcept;
Date date_from_day_number(long long days) noexcept;
std::string format_date(const Date& d);
/// Parses YYYY-MM-DD or YYYYMMDD.
std::optional<Date> parse_date(std::string_view text);

/// Immutable, strictly date-ordered table of daily records.
class WeatherTable {
 public:
  WeatherTable() = default;
  /// Throws DataError if dates are not strictly increasing.
  WeatherTable(std::vector<WeatherRecord> records, std::string source);

  [[nodiscard]] std::span<const WeatherRecord> records() const noexcept { return records_; }
  [[nodiscard]] std::size_t size() const noexcept { return records_.size(); }
  [[nodiscard]] bool empty() const noexcept { return records_.empty(); }
  [[nodiscard]] const WeatherRecord& operator[](std::size_t i) const noexcept { return records_[i]; }
  [[nodiscard]] const std::string& source() const noexcept { return source_; }

  [[nodiscard]] std::vector<double> column(Feature f) const;
  /// N x 16 matrix in Feature order.
  [[nodiscard]] Matrix feature_matrix() const;

  /// Record equality; the provenance tag is ignored.
  bool operator==(const WeatherTable& other) const { return records_ == other.records_; }

 private:
  std::vector<WeatherRecord> records_{};
  std::string source_{};
};

}  // namespace wxbench::ingest

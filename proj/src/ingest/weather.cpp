#include "wxbench/ingest/weather.hpp"

#include <algorithm>
#include <cstdio>

#include "wxbench/core/errors.hpp"
#include "wxbench/core/text.hpp"

namespace wxbench::ingest {

const std::array<std::string_view, kFeatureCount>& feature_names() noexcept {
  static constexpr std::array<std::string_view, kFeatureCount> names{
      "T2M",  "T2MDEW", "T2MWET",      "TS",    "T2M_RANGE", "T2M_MAX",   "T2M_MIN",  "QV2M",
      "RH2M", "PRECTOT", "PS", "WS10M_RANGE", "WS10M", "WD10M",     "WS10M_MAX", "WS10M_MIN"};
  return names;
}

const std::array<std::string_view, kFeatureCount>& power_parameter_names() noexcept {
  static constexpr std::array<std::string_view, kFeatureCount> names{
      "T2M",  "T2MDEW",      "T2MWET", "TS", "T2M_RANGE", "T2M_MAX",   "T2M_MIN",  "QV2M",
      "RH2M", "PRECTOTCORR", "PS", "WS10M_RANGE", "WS10M", "WD10M", "WS10M_MAX", "WS10M_MIN"};
  return names;
}

std::string_view feature_name(Feature f) noexcept { return feature_names()[index_of(f)]; }

std::optional<Feature> feature_from_name(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (name == feature_names()[i] || name == power_parameter_names()[i]) return static_cast<Feature>(i);
  }
  return std::nullopt;
}

bool WeatherRecord::has_missing() const noexcept {
  return std::any_of(values.begin(), values.end(), [](double v) { return v == kMissingSentinel; });
}

std::vector<std::string> record_violations(const WeatherRecord& r) {
  std::vector<std::string> out;
  if (r.has_missing()) out.emplace_back("missing sentinel present");
  if (!(r[Feature::T2M_MIN] <= r[Feature::T2M] && r[Feature::T2M] <= r[Feature::T2M_MAX])) {
    out.emplace_back("T2M outside [T2M_MIN, T2M_MAX]");
  }
  if (!(r[Feature::WS10M_MIN] <= r[Feature::WS10M] && r[Feature::WS10M] <= r[Feature::WS10M_MAX])) {
    out.emplace_back("WS10M outside [WS10M_MIN, WS10M_MAX]");
  }
  if (!(r[Feature::PRECTOT] >= 0.0)) out.emplace_back("PRECTOT negative");
  if (!(r[Feature::RH2M] >= 0.0 && r[Feature::RH2M] <= 100.0)) out.emplace_back("RH2M outside [0, 100]");
  if (!(r[Feature::WD10M] >= 0.0 && r[Feature::WD10M] < 360.0)) out.emplace_back("WD10M outside [0, 360)");
  return out;
}

long long day_number(const Date& d) noexcept { return std::chrono::sys_days{d}.time_since_epoch().count(); }

Date date_from_day_number(long long days) noexcept {
  return Date{std::chrono::sys_days{std::chrono::days{days}}};
}

std::string format_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()), static_cast<unsigned>(d.month()),
                static_cast<unsigned>(d.day()));
  return buf;
}

std::optional<Date> parse_date(std::string_view text) {
  text = trim(text);
  std::string_view y, m, d;
  if (text.size() == 10 && text[4] == '-' && text[7] == '-') {
    y = text.substr(0, 4), m = text.substr(5, 2), d = text.substr(8, 2);
  } else if (text.size() == 8) {
    y = text.substr(0, 4), m = text.substr(4, 2), d = text.substr(6, 2);
  } else {
    return std::nullopt;
  }
  long long yy = 0, mm = 0, dd = 0;
  if (!parse_int(y, yy) || !parse_int(m, mm) || !parse_int(d, dd)) return std::nullopt;
  const Date date{std::chrono::year{static_cast<int>(yy)}, std::chrono::month{static_cast<unsigned>(mm)},
                  std::chrono::day{static_cast<unsigned>(dd)}};
  if (!date.ok()) return std::nullopt;
  return date;
}

WeatherTable::WeatherTable(std::vector<WeatherRecord> records, std::string source)
    : records_(std::move(records)), source_(std::move(source)) {
  for (std::size_t i = 1; i < records_.size(); ++i) {
    if (!(records_[i - 1].date < records_[i].date)) {
      throw DataError("weather table dates not strictly increasing at " + format_date(records_[i].date));
    }
  }
}

std::vector<double> WeatherTable::column(Feature f) const {
  std::vector<double> out;
  out.reserve(records_.size());
  for (const auto& r : records_) out.push_back(r[f]);
  return out;
}

Matrix WeatherTable::feature_matrix() const {
  Matrix m(records_.size(), kFeatureCount);
  for (std::size_t i = 0; i < records_.size(); ++i) {
    std::copy(records_[i].values.begin(), records_[i].values.end(), m.row(i).begin());
  }
  return m;
}

}  // namespace wxbench::ingest

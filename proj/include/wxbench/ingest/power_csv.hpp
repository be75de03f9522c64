/**
 * @file power_csv.hpp
 * @brief Reader and writer for the POWER daily point CSV layout.
 *
 * Layout: a free-form header block closed by the line `-END HEADER-`, then a
 * `YEAR,MO,DY,<param...>` header row and one row per day. Parameter columns
 * are matched by name so their order does not matter; absent parameters are
 * filled with the -999 missing sentinel.
 */
#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "wxbench/ingest/weather.hpp"

namespace wxbench::ingest {

/// Throws ParseError (with 1-based line/column) on malformed input.
WeatherTable parse_power_csv(std::string_view text, std::string source = "<memory>");

struct PowerCsvWriteOptions {
  std::optional<double> latitude{};
  std::optional<double> longitude{};
  /// Fixed decimals for values; shortest round-trip text when unset.
  std::optional<int> decimals{};
};

std::string serialize_power_csv(const WeatherTable& table, const PowerCsvWriteOptions& options = {});

WeatherTable load_power_csv(const std::string& path);

}  // namespace wxbench::ingest

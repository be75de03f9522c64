#include "wxbench/ingest/power_csv.hpp"

#include <array>
#include <sstream>
#include <vector>

#include "wxbench/core/errors.hpp"
#include "wxbench/core/text.hpp"

namespace wxbench::ingest {
namespace {

constexpr std::string_view kEndHeader = "-END HEADER-";

constexpr std::array<std::string_view, kFeatureCount> kDescriptions{
    "MERRA-2 Temperature at 2 Meters (C)",
    "MERRA-2 Dew/Frost Point at 2 Meters (C)",
    "MERRA-2 Wet Bulb Temperature at 2 Meters (C)",
    "MERRA-2 Earth Skin Temperature (C)",
    "MERRA-2 Temperature at 2 Meters Range (C)",
    "MERRA-2 Temperature at 2 Meters Maximum (C)",
    "MERRA-2 Temperature at 2 Meters Minimum (C)",
    "MERRA-2 Specific Humidity at 2 Meters (g/kg)",
    "MERRA-2 Relative Humidity at 2 Meters (%)",
    "MERRA-2 Precipitation Corrected (mm/day)",
    "MERRA-2 Surface Pressure (kPa)",
    "MERRA-2 Wind Speed at 10 Meters Range (m/s)",
    "MERRA-2 Wind Speed at 10 Meters (m/s)",
    "MERRA-2 Wind Direction at 10 Meters (Degrees)",
    "MERRA-2 Wind Speed at 10 Meters Maximum (m/s)",
    "MERRA-2 Wind Speed at 10 Meters Minimum (m/s)",
};

std::string format_value(double v, const std::optional<int>& decimals) {
  if (v == kMissingSentinel) return "-999";
  return decimals ? format_fixed(v, *decimals) : format_double(v);
}

}  // namespace

WeatherTable parse_power_csv(std::string_view text, std::string source) {
  std::vector<std::string_view> lines;
  {
    std::size_t start = 0;
    while (start <= text.size()) {
      auto pos = text.find('\n', start);
      if (pos == std::string_view::npos) pos = text.size();
      lines.push_back(text.substr(start, pos - start));
      start = pos + 1;
    }
  }

  std::size_t line_no = 0;
  while (line_no < lines.size() && trim(lines[line_no]) != kEndHeader) ++line_no;
  if (line_no == lines.size()) throw ParseError("malformed POWER CSV: missing '-END HEADER-' marker");
  ++line_no;
  while (line_no < lines.size() && trim(lines[line_no]).empty()) ++line_no;
  if (line_no == lines.size()) throw ParseError("malformed POWER CSV: missing column header row", line_no);

  const auto header = split(trim(lines[line_no]), ',');
  if (header.size() < 3 || trim(header[0]) != "YEAR" || trim(header[1]) != "MO" || trim(header[2]) != "DY") {
    throw ParseError("malformed POWER CSV: column header must start with YEAR,MO,DY", line_no + 1, 1);
  }
  // Column position -> feature slot; unknown parameters are skipped.
  std::vector<std::optional<Feature>> column_feature(header.size());
  for (std::size_t c = 3; c < header.size(); ++c) column_feature[c] = feature_from_name(trim(header[c]));
  ++line_no;

  std::vector<WeatherRecord> records;
  for (; line_no < lines.size(); ++line_no) {
    const auto line = trim(lines[line_no]);
    if (line.empty()) continue;
    const std::size_t row = line_no + 1;
    const auto cells = split(line, ',');
    if (cells.size() != header.size()) {
      throw ParseError("row has " + std::to_string(cells.size()) + " cells, expected " + std::to_string(header.size()),
                       row, cells.size());
    }
    long long ymd[3] = {0, 0, 0};
    for (std::size_t c = 0; c < 3; ++c) {
      if (!parse_int(cells[c], ymd[c])) {
        throw ParseError("non-integer date cell '" + cells[c] + "' at row " + std::to_string(row) + ", column " +
                             std::to_string(c + 1),
                         row, c + 1);
      }
    }
    WeatherRecord rec;
    rec.date = Date{std::chrono::year{static_cast<int>(ymd[0])}, std::chrono::month{static_cast<unsigned>(ymd[1])},
                    std::chrono::day{static_cast<unsigned>(ymd[2])}};
    if (!rec.date.ok()) throw ParseError("invalid calendar date at row " + std::to_string(row), row, 1);
    rec.values.fill(kMissingSentinel);
    for (std::size_t c = 3; c < cells.size(); ++c) {
      if (!column_feature[c]) continue;
      double v = 0.0;
      if (!parse_double(cells[c], v)) {
        throw ParseError("non-numeric cell '" + cells[c] + "' at row " + std::to_string(row) + ", column " +
                             std::to_string(c + 1) + " (" + header[c] + ")",
                         row, c + 1);
      }
      rec[*column_feature[c]] = v;
    }
    records.push_back(rec);
  }

  try {
    return WeatherTable(std::move(records), std::move(source));
  } catch (const DataError& e) {
    throw ParseError(std::string("malformed POWER CSV: ") + e.what());
  }
}

std::string serialize_power_csv(const WeatherTable& table, const PowerCsvWriteOptions& options) {
  std::ostringstream out;
  out << "-BEGIN HEADER-\n";
  out << "NASA/POWER compatible daily point data\n";
  if (!table.empty()) {
    const auto& first = table.records().front().date;
    const auto& last = table.records().back().date;
    const auto mdy = [](const Date& d) {
      const auto iso = format_date(d);
      return iso.substr(5, 2) + "/" + iso.substr(8, 2) + "/" + iso.substr(0, 4);
    };
    out << "Dates (month/day/year): " << mdy(first) << " through " << mdy(last) << "\n";
  }
  if (options.latitude && options.longitude) {
    out << "Location: Latitude  " << format_double(*options.latitude) << "   Longitude " << format_double(*options.longitude)
        << "\n";
  }
  out << "The value for missing source data that cannot be computed or is outside of the sources availability range: -999\n";
  out << "Parameter(s):\n";
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    std::string name(power_parameter_names()[i]);
    name.resize(std::max<std::size_t>(name.size() + 1, 24), ' ');
    out << name << kDescriptions[i] << "\n";
  }
  out << kEndHeader << "\n";
  out << "YEAR,MO,DY";
  for (auto name : power_parameter_names()) out << ',' << name;
  out << "\n";
  for (const auto& r : table.records()) {
    out << static_cast<int>(r.date.year()) << ',' << static_cast<unsigned>(r.date.month()) << ','
        << static_cast<unsigned>(r.date.day());
    for (double v : r.values) out << ',' << format_value(v, options.decimals);
    out << "\n";
  }
  return out.str();
}

WeatherTable load_power_csv(const std::string& path) { return parse_power_csv(read_file(path), path); }

}  // namespace wxbench::ingest

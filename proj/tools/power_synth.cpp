// power_synth: writes the bundled POWER-format fixtures.
//   dhaka_2003_2023.csv  full daily series, 2003-01-01 .. 2023-01-01
//   dhaka_2021.csv       the calendar year 2021 of that series
//   dhaka_2021_gaps.csv  the same year with three rows carrying -999 cells
#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "wxbench/core/random.hpp"
#include "wxbench/core/text.hpp"
#include "wxbench/ingest/power_csv.hpp"
#include "wxbench/ingest/weather.hpp"

namespace {

using namespace wxbench;
using ingest::Feature;

double round2(double v) { return std::round(v * 100.0) / 100.0; }

// Monsoon intensity in [0, 1]: rises through May, peaks Jun-Aug, fades by late October.
double monsoon(int doy) {
  const double up = 1.0 / (1.0 + std::exp(-(doy - 145.0) / 9.0));
  const double down = 1.0 / (1.0 + std::exp((doy - 282.0) / 10.0));
  return up * down;
}

double dew_point(double t, double rh) {
  constexpr double a = 17.27;
  constexpr double b = 237.7;
  const double alpha = std::log(rh / 100.0) + a * t / (b + t);
  return b * alpha / (a - alpha);
}

double specific_humidity(double dew, double ps_kpa) {
  const double e = 6.112 * std::exp(17.67 * dew / (dew + 243.5));
  return 622.0 * e / (ps_kpa * 10.0 - 0.378 * e);
}

std::vector<ingest::WeatherRecord> synthesize(const ingest::Date& start, const ingest::Date& end, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ingest::WeatherRecord> out;
  const auto first = ingest::day_number(start);
  const auto last = ingest::day_number(end);
  double temp_noise = 0.0;
  double pressure_noise = 0.0;
  bool wet_yesterday = false;
  for (auto day = first; day <= last; ++day) {
    const auto date = ingest::date_from_day_number(day);
    const auto jan1 = ingest::day_number(std::chrono::year_month_day{date.year(), std::chrono::January, std::chrono::day{1}});
    const int doy = static_cast<int>(day - jan1) + 1;
    const double phase = 2.0 * std::numbers::pi * (doy - 15) / 365.25;
    const double w = monsoon(doy);

    const double p_wet = std::clamp(0.04 + 0.72 * w + (wet_yesterday ? 0.12 : 0.0), 0.0, 0.95);
    const bool wet = rng.uniform() < p_wet;
    wet_yesterday = wet;
    double rain = 0.0;
    if (wet) rain = std::exp(std::log(1.5 + 7.0 * w) + 1.15 * rng.normal());
    const double r = std::log1p(rain);

    temp_noise = 0.7 * temp_noise + 0.8 * rng.normal();
    const double t_base = 24.6 - 5.6 * std::cos(phase) - 0.9 * w;
    const double t2m = t_base - 0.55 * r + temp_noise;
    const double range = std::max(1.2, 10.8 - 3.4 * w - 0.6 * r + 0.8 * rng.normal());
    const double rh = std::clamp(62.0 + 20.0 * w + 4.2 * r + 3.5 * rng.normal(), 25.0, 99.5);
    pressure_noise = 0.8 * pressure_noise + 0.12 * rng.normal();
    const double ps = 100.55 + 0.75 * std::cos(phase) + pressure_noise - 0.04 * r;
    const double dew = dew_point(t2m, rh);
    const double qv = specific_humidity(dew, ps);
    const double ws = std::max(0.4, 1.9 + 0.9 * w + 0.1 * r + 0.5 * rng.normal());
    const double ws_max = ws * (1.35 + 0.25 * rng.uniform());
    const double ws_min = ws * (0.25 + 0.3 * rng.uniform());
    const double wd_mean = w > 0.5 ? 165.0 : 315.0;
    const double wd = std::fmod(wd_mean + 38.0 * rng.normal() + 720.0, 360.0);

    ingest::WeatherRecord rec;
    rec.date = date;
    rec[Feature::T2M] = round2(t2m);
    rec[Feature::T2MDEW] = round2(dew);
    rec[Feature::T2MWET] = round2(0.5 * (t2m + dew));
    rec[Feature::TS] = round2(t2m + 0.7 + 0.5 * std::sin(phase) - 0.3 * r + 0.6 * rng.normal());
    rec[Feature::T2M_MAX] = round2(t2m + 0.55 * range);
    rec[Feature::T2M_MIN] = round2(t2m - 0.45 * range);
    rec[Feature::T2M_RANGE] = round2(rec[Feature::T2M_MAX] - rec[Feature::T2M_MIN]);
    rec[Feature::QV2M] = round2(qv);
    rec[Feature::RH2M] = round2(rh);
    rec[Feature::PRECTOT] = round2(rain);
    rec[Feature::PS] = round2(ps);
    rec[Feature::WS10M] = round2(ws);
    rec[Feature::WS10M_MAX] = round2(ws_max);
    rec[Feature::WS10M_MIN] = round2(ws_min);
    rec[Feature::WS10M_RANGE] = round2(rec[Feature::WS10M_MAX] - rec[Feature::WS10M_MIN]);
    rec[Feature::WD10M] = round2(wd);
    out.push_back(rec);
  }
  return out;
}

ingest::Date ymd(int y, unsigned m, unsigned d) {
  return std::chrono::year_month_day{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate POWER-format weather fixtures"};
  std::string out_dir = "fixtures";
  std::uint64_t seed = 2003;
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "generator seed");
  CLI11_PARSE(app, argc, argv);

  ingest::PowerCsvWriteOptions options;
  options.latitude = 23.8103;
  options.longitude = 90.4125;
  options.decimals = 2;

  const auto all = synthesize(ymd(2003, 1, 1), ymd(2023, 1, 1), seed);
  for (const auto& r : all) {
    const auto v = ingest::record_violations(r);
    if (!v.empty()) {
      std::cerr << ingest::format_date(r.date) << ": " << v.front() << '\n';
      return 1;
    }
  }
  write_file(out_dir + "/dhaka_2003_2023.csv", ingest::serialize_power_csv(ingest::WeatherTable(all, "synth"), options));

  std::vector<ingest::WeatherRecord> year;
  std::copy_if(all.begin(), all.end(), std::back_inserter(year),
               [](const auto& r) { return r.date.year() == std::chrono::year{2021}; });
  write_file(out_dir + "/dhaka_2021.csv", ingest::serialize_power_csv(ingest::WeatherTable(year, "synth"), options));

  auto gaps = year;
  gaps[40][Feature::T2M] = ingest::kMissingSentinel;
  gaps[41][Feature::RH2M] = ingest::kMissingSentinel;
  gaps[41][Feature::QV2M] = ingest::kMissingSentinel;
  gaps[200].values.fill(ingest::kMissingSentinel);
  write_file(out_dir + "/dhaka_2021_gaps.csv", ingest::serialize_power_csv(ingest::WeatherTable(gaps, "synth"), options));

  std::cout << "wrote " << all.size() << " + " << year.size() << " + " << gaps.size() << " rows to " << out_dir << '\n';
  return 0;
}

#include "wxbench/analysis/monthly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <vector>

#include "wxbench/core/errors.hpp"
#include "wxbench/core/text.hpp"
#include "wxbench/preprocess/target.hpp"

namespace wxbench::analysis {
namespace {

constexpr std::array<const char*, 12> kMonthNames{"January", "February", "March",     "April",   "May",      "June",
                                                   "July",    "August",   "September", "October", "November", "December"};

}  // namespace

MonthlyProfile monthly_profile(const ingest::WeatherTable& table, ingest::Feature feature) {
  std::array<std::vector<double>, 12> by_month;
  for (const auto& r : table.records()) by_month[static_cast<unsigned>(r.date.month()) - 1].push_back(r[feature]);

  MonthlyProfile out;
  out.feature = std::string(ingest::feature_name(feature));
  for (std::size_t m = 0; m < 12; ++m) {
    auto& v = by_month[m];
    if (v.empty()) throw DataError(std::string("monthly profile: no rows for ") + kMonthNames[m]);
    std::sort(v.begin(), v.end());
    auto& s = out.months[m];
    s.month = static_cast<int>(m + 1);
    s.count = v.size();
    s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    s.q1 = preprocess::quantile(v, 0.25);
    s.median = preprocess::quantile(v, 0.5);
    s.q3 = preprocess::quantile(v, 0.75);
  }
  return out;
}

double mean_over_months(const ingest::WeatherTable& table, ingest::Feature feature, std::span<const int> months) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& r : table.records()) {
    const int m = static_cast<int>(static_cast<unsigned>(r.date.month()));
    if (std::find(months.begin(), months.end(), m) != months.end()) {
      sum += r[feature];
      ++n;
    }
  }
  if (n == 0) throw DataError("mean_over_months: no rows in the requested months");
  return sum / static_cast<double>(n);
}

std::string monthly_csv(const MonthlyProfile& profile) {
  std::ostringstream out;
  out << "month,mean,median,q1,q3\n";
  for (const auto& s : profile.months) {
    out << s.month << ',' << format_double(s.mean) << ',' << format_double(s.median) << ',' << format_double(s.q1) << ','
        << format_double(s.q3) << '\n';
  }
  return out.str();
}

}  // namespace wxbench::analysis

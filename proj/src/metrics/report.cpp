#include "wxbench/metrics/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wxbench/core/errors.hpp"
#include "wxbench/core/text.hpp"

namespace wxbench::metrics {
namespace {

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}
std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

std::string percent_cell(double fraction, int decimals) {
  const double pct = fraction * 100.0;
  if (decimals == 0) return std::to_string(static_cast<long long>(std::llround(pct))) + "%";
  return format_fixed(pct, decimals) + "%";
}

RenderedReport render_report(const std::vector<ReportRow>& rows, const std::string& target) {
  if (rows.empty()) throw InvalidArgument("render_report: no rows");
  std::string title_target = target;
  if (!title_target.empty()) title_target[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(title_target[0])));

  std::size_t name_w = std::string("Algorithm").size();
  for (const auto& r : rows) name_w = std::max(name_w, r.algorithm.size());
  const std::vector<std::string> headers{"Accuracy", "Precision", "Recall", "F1 score"};

  std::ostringstream table;
  const auto rule = [&] {
    table << '+' << std::string(name_w + 2, '-');
    for (const auto& h : headers) table << '+' << std::string(h.size() + 2, '-');
    table << "+\n";
  };
  table << "Algorithm Efficiency Overview of " << title_target << '\n';
  rule();
  table << "| " << pad_right("Algorithm", name_w) << ' ';
  for (const auto& h : headers) table << "| " << h << ' ';
  table << "|\n";
  rule();
  for (const auto& r : rows) {
    const std::vector<std::string> cells{percent_cell(r.scores.accuracy, 2), percent_cell(r.scores.precision_macro, 0),
                                         percent_cell(r.scores.recall_macro, 0), percent_cell(r.scores.f1_macro, 0)};
    table << "| " << pad_right(r.algorithm, name_w) << ' ';
    for (std::size_t c = 0; c < headers.size(); ++c) table << "| " << pad_left(cells[c], headers[c].size()) << ' ';
    table << "|\n";
  }
  rule();

  std::ostringstream csv;
  csv << kMetricsCsvHeader << '\n';
  for (const auto& r : rows) {
    const auto& s = r.scores;
    csv << r.algorithm << ',' << target << ',' << format_double(s.accuracy) << ',' << format_double(s.precision_macro)
        << ',' << format_double(s.recall_macro) << ',' << format_double(s.f1_macro) << ','
        << format_double(s.precision_weighted) << ',' << format_double(s.recall_weighted) << ','
        << format_double(s.f1_weighted) << '\n';
  }
  return {table.str(), csv.str()};
}

}  // namespace wxbench::metrics

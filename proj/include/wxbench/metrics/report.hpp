#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wxbench/metrics/confusion.hpp"

namespace wxbench::metrics {

struct ReportRow {
  std::string algorithm{};
  ScoreReport scores{};
};

struct RenderedReport {
  std::string table{};
  std::string csv{};
};

inline constexpr const char* kMetricsCsvHeader =
    "algorithm,target,accuracy,precision_macro,recall_macro,f1_macro,precision_weighted,recall_weighted,f1_weighted";

/// Table text with accuracy as a two-decimal percentage ("92.51%") and macro
/// precision / recall / F1 as whole percentages ("89%"); the CSV carries the
/// same rows at full precision. Throws InvalidArgument on an empty row list.
RenderedReport render_report(const std::vector<ReportRow>& rows, const std::string& target);

/// "92.51%" style cell.
std::string percent_cell(double fraction, int decimals);

}  // namespace wxbench::metrics

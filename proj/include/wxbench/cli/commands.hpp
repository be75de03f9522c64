/**
 * @file commands.hpp
 * @brief The fetch, analyze and benchmark commands. Each validates its
 * configuration before doing any work and writes only under `out_dir`.
 *
 * Exit codes: 0 success, 1 usage or configuration error, 2 network failure,
 * 3 parse or data failure, 4 missing input, 5 model failure.
 */
#pragma once

#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

#include "wxbench/analysis/correlation.hpp"
#include "wxbench/cli/run_config.hpp"
#include "wxbench/metrics/confusion.hpp"
#include "wxbench/metrics/report.hpp"

namespace wxbench::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitNetwork = 2,
  kExitParse = 3,
  kExitMissingInput = 4,
  kExitModel = 5,
};

/// Exit code for an exception thrown by a command.
int exit_code_for(const std::exception& e) noexcept;

struct FetchResult {
  std::size_t raw_rows{};
  std::size_t rows_with_missing{};
  std::size_t clean_rows{};
  std::string raw_path{};
  std::string clean_path{};
};

/// Downloads (or reads `offline`) the raw POWER CSV, then writes it verbatim
/// as power_raw.csv and the cleaned table as power_clean.csv.
FetchResult cmd_fetch(const RunConfig& config, std::ostream& log);

struct AnalyzeResult {
  analysis::CorrelationMatrix correlation{};
  std::vector<std::string> files{};
};

/// Correlation matrix plus density and monthly profiles of PRECTOT and T2M,
/// written under `<out_dir>/analysis`.
AnalyzeResult cmd_analyze(const RunConfig& config, std::ostream& log);

/// One row of the comparison: a display name, a file-name slug and either a
/// single model kind or a stacked model with the given meta-learner.
struct Algorithm {
  std::string name;
  std::string slug;
  std::string kind;
  bool stacked;
};

/// Gradient Boosting, Ada Boost, Artificial Neural Network, then the three
/// stacks with forest, mlp and knn meta-learners.
const std::vector<Algorithm>& benchmark_algorithms();

struct BenchmarkResult {
  std::vector<metrics::ReportRow> rows{};
  std::vector<metrics::ConfusionMatrix> confusions{};
  double majority_baseline{};
  std::size_t train_rows{};
  std::size_t test_rows{};
  std::string table{};
  std::string directory{};
};

/// Trains every algorithm on one split of the cleaned table and writes
/// metrics.csv (rewritten after each model), table.txt, confusion_<slug>.csv,
/// summary.json and the resolved run.cfg under `<out_dir>/<target>`. Every
/// random choice derives from `config.seed`. Model failures are rethrown as
/// ModelError naming the algorithm.
BenchmarkResult cmd_benchmark(const RunConfig& config, std::ostream& log);

}  // namespace wxbench::cli

#include "wxbench/cli/commands.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <filesystem>
#include <map>
#include <ostream>

#include <json.hpp>

#include "wxbench/analysis/density.hpp"
#include "wxbench/analysis/monthly.hpp"
#include "wxbench/core/errors.hpp"
#include "wxbench/core/random.hpp"
#include "wxbench/core/text.hpp"
#include "wxbench/ingest/cleaning.hpp"
#include "wxbench/ingest/power_client.hpp"
#include "wxbench/ingest/power_csv.hpp"
#include "wxbench/preprocess/dataset.hpp"
#include "wxbench/stacking/stacking.hpp"

namespace wxbench::cli {
namespace {

namespace fs = std::filesystem;

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InvalidArgument("cannot create output directory '" + dir + "': " + ec.message());
}

std::string join_path(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

ingest::WeatherTable load_clean_input(const RunConfig& config) {
  const auto path = config.resolved_input();
  auto table = ingest::load_power_csv(path);
  // Tables written by fetch are already clean; this covers hand-supplied files.
  return ingest::clean_missing(table, config.cleaning);
}

double majority_accuracy(const preprocess::LabeledDataset& train, const preprocess::LabeledDataset& test) {
  std::vector<std::size_t> counts(train.n_classes(), 0);
  for (const int y : train.labels) ++counts[static_cast<std::size_t>(y)];
  const auto majority = static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
  const auto hits = std::count(test.labels.begin(), test.labels.end(), majority);
  return test.size() == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(test.size());
}

std::vector<std::size_t> class_counts(const preprocess::LabeledDataset& ds) {
  std::vector<std::size_t> counts(ds.n_classes(), 0);
  for (const int y : ds.labels) ++counts[static_cast<std::size_t>(y)];
  return counts;
}

std::string metrics_csv(const std::vector<metrics::ReportRow>& rows, const std::string& target) {
  if (rows.empty()) return std::string(metrics::kMetricsCsvHeader) + "\n";
  return metrics::render_report(rows, target).csv;
}

}  // namespace

int exit_code_for(const std::exception& e) noexcept {
  if (dynamic_cast<const InvalidArgument*>(&e) != nullptr) return kExitUsage;
  if (dynamic_cast<const NetworkError*>(&e) != nullptr) return kExitNetwork;
  if (dynamic_cast<const ParseError*>(&e) != nullptr) return kExitParse;
  if (dynamic_cast<const DataError*>(&e) != nullptr) return kExitParse;
  if (dynamic_cast<const MissingInput*>(&e) != nullptr) return kExitMissingInput;
  if (dynamic_cast<const ModelError*>(&e) != nullptr) return kExitModel;
  return kExitModel;
}

FetchResult cmd_fetch(const RunConfig& config, std::ostream& log) {
  validate_config(config);
  std::string raw;
  if (!config.offline.empty()) {
    raw = read_file(config.offline);
    log << "read " << config.offline << '\n';
  } else {
    ingest::PowerRequest request{config.latitude, config.longitude, config.start, config.end,
                                 ingest::default_power_parameters()};
    ingest::PowerClientOptions options;
    options.base_url = config.power_base_url;
    options.attempts = config.power_attempts;
    options.initial_backoff = std::chrono::milliseconds(config.power_backoff_ms);
    log << "fetching " << options.base_url << ingest::power_request_target(request, options) << '\n';
    raw = ingest::fetch_power_daily(request, options);
  }
  const auto table = ingest::parse_power_csv(raw, config.offline.empty() ? "POWER response" : config.offline);
  const auto clean = ingest::clean_missing(table, config.cleaning);

  ensure_dir(config.out_dir);
  FetchResult result;
  result.raw_rows = table.size();
  result.rows_with_missing = static_cast<std::size_t>(
      std::count_if(table.records().begin(), table.records().end(), [](const auto& r) { return r.has_missing(); }));
  result.clean_rows = clean.size();
  result.raw_path = join_path(config.out_dir, "power_raw.csv");
  result.clean_path = join_path(config.out_dir, "power_clean.csv");
  write_file(result.raw_path, raw);
  ingest::PowerCsvWriteOptions write_options;
  write_options.latitude = config.latitude;
  write_options.longitude = config.longitude;
  write_file(result.clean_path, ingest::serialize_power_csv(clean, write_options));

  log << "raw rows: " << result.raw_rows << " (" << result.rows_with_missing << " with missing values)\n"
      << "clean rows: " << result.clean_rows << " (" << ingest::to_string(config.cleaning) << ")\n"
      << "wrote " << result.raw_path << '\n'
      << "wrote " << result.clean_path << '\n';
  return result;
}

AnalyzeResult cmd_analyze(const RunConfig& config, std::ostream& log) {
  validate_config(config);
  const auto table = load_clean_input(config);
  const auto dir = join_path(config.out_dir, "analysis");
  ensure_dir(dir);

  AnalyzeResult result;
  result.correlation = analysis::pearson_matrix(table);
  const auto write = [&](const std::string& name, const std::string& body) {
    const auto path = join_path(dir, name);
    write_file(path, body);
    result.files.push_back(path);
  };
  write("corr.csv", analysis::correlation_csv(result.correlation));

  constexpr std::array<int, 4> kMonsoon{6, 7, 8, 9};
  constexpr std::array<int, 3> kWinter{12, 1, 2};
  for (const auto feature : {ingest::Feature::PRECTOT, ingest::Feature::T2M}) {
    const std::string name(ingest::feature_names()[static_cast<std::size_t>(feature)]);
    const auto values = table.column(feature);
    write("density_" + name + ".csv", analysis::density_csv(analysis::density_estimate(values, analysis::GaussianKde{})));
    write("histogram_" + name + ".csv", analysis::density_csv(analysis::density_estimate(values, analysis::Histogram{})));
    write("monthly_" + name + ".csv", analysis::monthly_csv(analysis::monthly_profile(table, feature)));

    const auto partners = analysis::strongest_partners(result.correlation, name);
    log << name << " strongest correlates:";
    for (std::size_t i = 0; i < std::min<std::size_t>(4, partners.size()); ++i) log << ' ' << partners[i];
    log << '\n'
        << name << " mean Jun-Sep " << format_fixed(analysis::mean_over_months(table, feature, kMonsoon), 3)
        << ", Dec-Feb " << format_fixed(analysis::mean_over_months(table, feature, kWinter), 3) << '\n';
  }
  for (const auto& f : result.files) log << "wrote " << f << '\n';
  return result;
}

const std::vector<Algorithm>& benchmark_algorithms() {
  static const std::vector<Algorithm> algorithms{
      {"Gradient Boosting", "gradient_boosting", "gbm", false},
      {"Ada Boost", "ada_boost", "adaboost", false},
      {"Artificial Neural Network", "neural_network", "mlp", false},
      {"Stacking Random Forest", "stacking_random_forest", "forest", true},
      {"Stacking Neural Network", "stacking_neural_network", "mlp", true},
      {"Stacking KNN", "stacking_knn", "knn", true},
  };
  return algorithms;
}

BenchmarkResult cmd_benchmark(const RunConfig& config, std::ostream& log) {
  validate_config(config);
  const auto table = load_clean_input(config);

  preprocess::PrepareOptions prep;
  prep.target = config.target;
  prep.scheme = config.scheme();
  prep.lag = config.lag;
  prep.test_fraction = config.test_fraction;
  prep.split_seed = derive_seed(config.seed, "split");
  const auto data = preprocess::prepare_dataset(table, prep);
  const auto& train = data.train;
  const auto& test = data.test;
  const auto k = train.n_classes();
  const std::string target_name(preprocess::to_string(config.target));

  BenchmarkResult result;
  result.directory = join_path(config.out_dir, target_name);
  result.train_rows = train.size();
  result.test_rows = test.size();
  result.majority_baseline = majority_accuracy(train, test);
  ensure_dir(result.directory);
  write_file(join_path(result.directory, "run.cfg"), serialize_config(config));

  log << "target " << target_name << ": " << train.size() << " train rows, " << test.size() << " test rows, " << k
      << " classes, " << train.features.cols() << " features\n"
      << "majority baseline accuracy " << metrics::percent_cell(result.majority_baseline, 2) << '\n';

  std::map<std::string, stacking::BaseLayer> layers;
  for (const auto& algo : benchmark_algorithms()) {
    const auto started = std::chrono::steady_clock::now();
    ClassPrediction prediction;
    try {
      if (algo.stacked) {
        const auto spec = config.stacking_spec(algo.kind);
        std::string key;
        for (const auto& b : spec.base_learners) key += models::config_to_json(b).dump() + ";";
        auto it = layers.find(key);
        if (it == layers.end()) {
          it = layers.emplace(key, stacking::fit_base_layer(spec, train.features, train.labels, k)).first;
        }
        const auto model = stacking::fit_meta(spec, it->second, train.labels, k, train.features.cols());
        prediction = model->predict(test.features);
      } else {
        const auto model =
            models::fit_model(config.model(algo.kind), train.features, train.labels, k, derive_seed(config.seed, algo.slug));
        prediction = model->predict(test.features);
      }
    } catch (const ModelError& e) {
      throw ModelError(algo.name + ": " + e.what());
    } catch (const DataError& e) {
      throw ModelError(algo.name + ": " + e.what());
    }
    const auto seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    auto cm = metrics::confusion_matrix(test.labels, prediction.labels, k, train.class_names);
    result.rows.push_back({algo.name, metrics::classification_scores(cm)});
    write_file(join_path(result.directory, "confusion_" + algo.slug + ".csv"), metrics::confusion_csv(cm));
    result.confusions.push_back(std::move(cm));
    write_file(join_path(result.directory, "metrics.csv"), metrics_csv(result.rows, target_name));
    log << algo.name << ": accuracy " << metrics::percent_cell(result.rows.back().scores.accuracy, 2) << " ("
        << format_fixed(seconds, 1) << " s)\n";
  }

  result.table = metrics::render_report(result.rows, target_name).table;
  write_file(join_path(result.directory, "table.txt"), result.table);

  nlohmann::ordered_json summary;
  summary["target"] = target_name;
  summary["seed"] = config.seed;
  summary["train_rows"] = train.size();
  summary["test_rows"] = test.size();
  summary["features"] = train.feature_names;
  summary["classes"] = train.class_names;
  summary["class_edges"] = data.binning.edges;
  summary["train_class_counts"] = class_counts(train);
  summary["test_class_counts"] = class_counts(test);
  summary["majority_baseline_accuracy"] = result.majority_baseline;
  auto& accs = summary["accuracy"] = nlohmann::ordered_json::object();
  for (const auto& row : result.rows) accs[row.algorithm] = row.scores.accuracy;
  write_file(join_path(result.directory, "summary.json"), summary.dump(2) + "\n");

  log << '\n' << result.table << "wrote " << result.directory << '\n';
  return result;
}

}  // namespace wxbench::cli

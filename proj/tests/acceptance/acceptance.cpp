// One PASS/FAIL line per acceptance criterion. Exits nonzero if any asserted
// criterion fails; reported-only targets print INFO lines.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "wxbench/analysis/correlation.hpp"
#include "wxbench/analysis/monthly.hpp"
#include "wxbench/cli/commands.hpp"
#include "wxbench/core/random.hpp"
#include "wxbench/core/text.hpp"
#include "wxbench/ensembles/adaboost.hpp"
#include "wxbench/ensembles/gbm.hpp"
#include "wxbench/ingest/cleaning.hpp"
#include "wxbench/ingest/power_csv.hpp"
#include "wxbench/learners/knn.hpp"
#include "wxbench/learners/mlp.hpp"
#include "wxbench/metrics/confusion.hpp"
#include "wxbench/preprocess/dataset.hpp"
#include "wxbench/stacking/stacking.hpp"

using namespace wxbench;
namespace fs = std::filesystem;

namespace {

int failures = 0;

std::string fixture(const std::string& name) { return std::string(WXBENCH_FIXTURES) + "/" + name; }

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, double lo = 0.0, double hi = 1.0) {
  Rng rng(seed);
  Matrix m(rows, cols);
  for (auto& v : m.data()) v = rng.uniform(lo, hi);
  return m;
}

Labels random_labels(std::size_t n, std::size_t k, std::uint64_t seed) {
  Rng rng(seed);
  Labels y(n);
  for (auto& v : y) v = static_cast<int>(rng.below(k));
  return y;
}

void criterion(const std::string& name, const std::function<std::string(bool&)>& body) {
  const auto start = std::chrono::steady_clock::now();
  bool ok = false;
  std::string detail;
  try {
    detail = body(ok);
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!ok) ++failures;
  std::cout << (ok ? "PASS " : "FAIL ") << name << " (" << detail << ", " << std::fixed << std::setprecision(2) << secs
            << " s)" << std::endl;
}

std::string fmt(double v, int decimals = 6) { return format_fixed(v, decimals); }

const ingest::WeatherTable& full_table() {
  static const auto table = ingest::clean_missing(ingest::load_power_csv(fixture("dhaka_2003_2023.csv")));
  return table;
}

std::string read(const fs::path& p) { return read_file(p.string()); }

}  // namespace

int main() {
  criterion("metrics oracle", [](bool& ok) {
    const Labels t{0, 0, 1, 1};
    const Labels p{0, 1, 1, 1};
    const auto s = metrics::classification_scores(metrics::confusion_matrix(t, p, 2));
    ok = s.accuracy == 0.75 && std::abs(s.f1_macro - 11.0 / 15.0) <= 1e-4;
    return "accuracy " + fmt(s.accuracy, 4) + ", macro-F1 " + fmt(s.f1_macro, 4);
  });

  criterion("samme identity", [](bool& ok) {
    const auto x = random_matrix(500, 4, 101, -1, 1);
    const auto y = random_labels(500, 2, 102);
    double worst = 0.0;
    std::size_t rounds = 0;
    const auto observer = [&](std::size_t, const ensembles::AdaBoostStage& stage, std::span<const double> w) {
      ++rounds;
      double err = 0.0;
      for (std::size_t i = 0; i < x.rows(); ++i) {
        if (static_cast<int>(argmax(stage.tree.leaf_value(x.row(i)))) != y[i]) err += w[i];
      }
      worst = std::max(worst, std::abs(err - 0.5));
    };
    ensembles::fit_adaboost(x, y, 2, ensembles::AdaBoostParams{.rounds = 50}, 7, observer);
    ok = rounds > 1 && worst <= 1e-9;
    return std::to_string(rounds) + " rounds, max |err - 0.5| " + format_double(worst);
  });

  criterion("gbm monotone loss", [](bool& ok) {
    const auto table = ingest::load_power_csv(fixture("dhaka_2021.csv"));
    preprocess::PrepareOptions o;
    o.split_seed = derive_seed(42, "split");
    const auto d = preprocess::prepare_dataset(table, o);
    const auto m = ensembles::fit_gbm(d.train.features, d.train.labels, d.train.n_classes(),
                                      ensembles::GbmParams{.rounds = 200, .learning_rate = 0.1}, 42);
    std::size_t rises = 0;
    for (std::size_t i = 1; i < m.training_loss.size(); ++i) rises += m.training_loss[i] > m.training_loss[i - 1];
    ok = m.training_loss.size() == 201 && rises == 0;
    return "loss " + fmt(m.training_loss.front(), 4) + " -> " + fmt(m.training_loss.back(), 4) + ", " +
           std::to_string(rises) + " rises";
  });

  criterion("mlp gradient check", [](bool& ok) {
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const std::vector<std::size_t> sizes{5, 8, 3};
      const auto m = learners::init_mlp(sizes, seed);
      worst = std::max(worst, learners::gradient_check(m, random_matrix(8, 5, seed + 1, -1, 1), random_labels(8, 3, seed + 2)));
    }
    ok = worst < 1e-4;
    return "max relative error " + format_double(worst);
  });

  criterion("knn oracle", [](bool& ok) {
    const auto x = random_matrix(400, 5, 201);
    const auto y = random_labels(400, 4, 202);
    const auto q = random_matrix(200, 5, 203);
    const std::size_t k = 15;
    const auto p = learners::predict_knn(learners::fit_knn(x, y, 4, k), q);
    std::size_t mismatches = 0;
    for (std::size_t r = 0; r < q.rows(); ++r) {
      std::vector<std::pair<double, std::size_t>> d;
      for (std::size_t i = 0; i < x.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < x.cols(); ++j) s += (x(i, j) - q(r, j)) * (x(i, j) - q(r, j));
        d.emplace_back(s, i);
      }
      std::sort(d.begin(), d.end());
      std::vector<double> votes(4, 0.0);
      for (std::size_t i = 0; i < k; ++i) votes[static_cast<std::size_t>(y[d[i].second])] += 1.0;
      const auto label = static_cast<int>(std::max_element(votes.begin(), votes.end()) - votes.begin());
      bool same = p.labels[r] == label;
      for (std::size_t c = 0; c < 4; ++c) same = same && p.proba(r, c) == votes[c] / static_cast<double>(k);
      mismatches += !same;
    }
    ok = mismatches == 0;
    return "200 queries, " + std::to_string(mismatches) + " mismatches";
  });

  criterion("stacking leak-freedom", [](bool& ok) {
    Rng rng(301);
    std::size_t leaks = 0;
    std::size_t records = 0;
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t folds = 2 + rng.below(7);
      const std::uint64_t seed = rng.next_u64();
      const auto x = random_matrix(90, 3, seed);
      Labels y(90);
      for (std::size_t i = 0; i < 90; ++i) y[i] = static_cast<int>(i % 3);
      stacking::StackingSpec spec;
      models::GbmConfig gbm;
      gbm.params.rounds = 5;
      models::AdaBoostConfig ada;
      ada.params.rounds = 5;
      spec.base_learners = {gbm, ada, models::CartConfig{}};
      spec.meta_learner = models::KnnConfig{5};
      spec.n_folds = folds;
      spec.seed = seed;
      const auto oof = stacking::oof_meta_features(spec, x, y, 3);
      std::vector<std::size_t> scored(90, 0);
      for (const auto& rec : oof.log) {
        ++records;
        const std::set<std::size_t> train(rec.train_rows.begin(), rec.train_rows.end());
        for (auto r : rec.scored_rows) {
          leaks += train.count(r);
          ++scored[r];
        }
      }
      for (auto c : scored) leaks += c != spec.base_learners.size();
    }
    ok = leaks == 0 && records > 0;
    return std::to_string(records) + " fold records, " + std::to_string(leaks) + " leaks";
  });

  criterion("precipitation correlates with humidity", [](bool& ok) {
    const auto corr = analysis::pearson_matrix(full_table());
    const auto partners = analysis::strongest_partners(corr, "PRECTOT");
    const std::vector<std::string> top(partners.begin(), partners.begin() + std::min<std::size_t>(4, partners.size()));
    const auto has = [&](const char* f) { return std::find(top.begin(), top.end(), f) != top.end(); };
    ok = has("QV2M") && has("RH2M");
    std::string list;
    for (const auto& t : top) list += (list.empty() ? "" : " ") + t;
    return "top-4 " + list;
  });

  criterion("mid-year is wetter and warmer", [](bool& ok) {
    const std::vector<int> jjas{6, 7, 8, 9};
    const std::vector<int> djf{12, 1, 2};
    const auto& t = full_table();
    const double p_wet = analysis::mean_over_months(t, ingest::Feature::PRECTOT, jjas);
    const double p_dry = analysis::mean_over_months(t, ingest::Feature::PRECTOT, djf);
    const double t_wet = analysis::mean_over_months(t, ingest::Feature::T2M, jjas);
    const double t_dry = analysis::mean_over_months(t, ingest::Feature::T2M, djf);
    ok = p_wet > p_dry && t_wet > t_dry;
    return "PRECTOT " + fmt(p_wet, 2) + " vs " + fmt(p_dry, 2) + ", T2M " + fmt(t_wet, 2) + " vs " + fmt(t_dry, 2);
  });

  const fs::path root = fs::current_path() / "acceptance_runs";
  fs::remove_all(root);
  const auto benchmark = [&](const std::string& name) {
    cli::RunConfig config;
    config.input = fixture("dhaka_2003_2023.csv");
    config.out_dir = (root / name).string();
    std::ostringstream log;
    return cli::cmd_benchmark(config, log);
  };

  cli::BenchmarkResult first;
  double first_secs = 0.0;
  criterion("precipitation table floor", [&](bool& ok) {
    const auto start = std::chrono::steady_clock::now();
    first = benchmark("a");
    first_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    double lo = 1.0;
    double hi = 0.0;
    ok = first_secs < 300.0;
    std::string cells;
    for (const auto& row : first.rows) {
      lo = std::min(lo, row.scores.accuracy);
      hi = std::max(hi, row.scores.accuracy);
      ok = ok && row.scores.accuracy >= first.majority_baseline + 0.05;
      cells += "; " + row.algorithm + " " + fmt(100 * row.scores.accuracy, 2) + "%";
    }
    const bool band = lo >= 0.85 && hi <= 0.96;
    const bool spread = hi - lo <= 0.05;
    std::cout << "INFO precipitation soft band [85%, 96%]: " << (band ? "inside" : "outside") << ", spread "
              << fmt(100 * (hi - lo), 2) << " points (" << (spread ? "within" : "over") << " 5), reference 91.00-92.51%"
              << std::endl;
    return "baseline " + fmt(100 * first.majority_baseline, 2) + "%" + cells;
  });

  criterion("benchmark determinism", [&](bool& ok) {
    benchmark("b");
    const auto a = read(fs::path(first.directory) / "metrics.csv");
    const auto b = read(root / "b" / fs::path(first.directory).filename() / "metrics.csv");
    ok = !a.empty() && a == b;
    return std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different");
  });

  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}

#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "wxbench/core/errors.hpp"
#include "wxbench/core/text.hpp"
#include "wxbench/metrics/confusion.hpp"
#include "wxbench/metrics/report.hpp"

using namespace wxbench;
using namespace wxbench::metrics;

TEST_CASE("confusion matrix hand count") {
  const Labels t{0, 0, 1, 1};
  const Labels p{0, 1, 1, 1};
  const auto cm = confusion_matrix(t, p, 2);
  CHECK(cm(0, 0) == 1);
  CHECK(cm(0, 1) == 1);
  CHECK(cm(1, 0) == 0);
  CHECK(cm(1, 1) == 2);
  CHECK(cm.total() == 4);
  CHECK(cm.trace() == 3);
  const auto d = confusion_matrix(t, t, 2);
  CHECK(d(0, 1) == 0);
  CHECK(d(1, 0) == 0);
  CHECK_THROWS_AS(confusion_matrix(Labels{0, 2}, Labels{0, 1}, 2), InvalidArgument);
  CHECK_THROWS_AS(confusion_matrix(Labels{0}, Labels{0, 1}, 2), InvalidArgument);
}

TEST_CASE("scores for the hand case") {
  const auto s = classification_scores(confusion_matrix(Labels{0, 0, 1, 1}, Labels{0, 1, 1, 1}, 2));
  CHECK(s.accuracy == 0.75);
  CHECK(s.precision[0] == 1.0);
  CHECK(s.precision[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(s.recall[0] == 0.5);
  CHECK(s.recall[1] == 1.0);
  CHECK(s.f1[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(s.f1[1] == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(s.f1_macro == doctest::Approx(11.0 / 15.0).epsilon(1e-15));
  CHECK(std::abs(s.f1_macro - 0.7333) < 1e-4);
  CHECK(s.support == std::vector<std::uint64_t>{2, 2});
}

TEST_CASE("perfect predictions score 1 and unpredicted classes score 0") {
  const Labels t{0, 1, 2, 2};
  const auto perfect = classification_scores(confusion_matrix(t, t, 3));
  CHECK(perfect.accuracy == 1.0);
  CHECK(perfect.f1_macro == 1.0);
  CHECK(perfect.precision_weighted == 1.0);
  const auto none = classification_scores(confusion_matrix(t, Labels{0, 0, 2, 2}, 3));
  CHECK(none.precision[1] == 0.0);
  CHECK(none.recall[1] == 0.0);
  CHECK(none.f1[1] == 0.0);
  ConfusionMatrix empty(2);
  CHECK_THROWS_AS(classification_scores(empty), InvalidArgument);
}

TEST_CASE("fuzzed scores agree with a per-sample counter") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t k = 2 + seed % 4;
    const auto t = wxtest::random_labels(1000, k, seed);
    const auto p = wxtest::random_labels(1000, k, seed + 500);
    const auto cm = confusion_matrix(t, p, k);
    const auto s = classification_scores(cm);
    double acc_from_recall = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      std::size_t tp = 0, fp = 0, fn = 0, support = 0;
      for (std::size_t i = 0; i < t.size(); ++i) {
        const bool is_t = t[i] == static_cast<int>(c);
        const bool is_p = p[i] == static_cast<int>(c);
        tp += is_t && is_p;
        fp += !is_t && is_p;
        fn += is_t && !is_p;
        support += is_t;
      }
      CHECK(cm.row_sum(c) == support);
      const double prec = tp + fp ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
      const double rec = tp + fn ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
      const double f1 = prec + rec > 0 ? 2 * prec * rec / (prec + rec) : 0.0;
      CHECK(s.precision[c] == doctest::Approx(prec).epsilon(1e-12));
      CHECK(s.recall[c] == doctest::Approx(rec).epsilon(1e-12));
      CHECK(s.f1[c] == doctest::Approx(f1).epsilon(1e-12));
      acc_from_recall += static_cast<double>(support) / 1000.0 * rec;
    }
    CHECK(s.accuracy == doctest::Approx(acc_from_recall).epsilon(1e-12));
  }
}

TEST_CASE("permuting classes permutes per-class scores only") {
  const auto t = wxtest::random_labels(500, 4, 1);
  const auto p = wxtest::random_labels(500, 4, 2);
  const int perm[4] = {2, 0, 3, 1};
  Labels tp(t.size()), pp(p.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    tp[i] = perm[t[i]];
    pp[i] = perm[p[i]];
  }
  const auto a = classification_scores(confusion_matrix(t, p, 4));
  const auto b = classification_scores(confusion_matrix(tp, pp, 4));
  CHECK(a.accuracy == b.accuracy);
  CHECK(a.f1_macro == doctest::Approx(b.f1_macro).epsilon(1e-15));
  CHECK(a.precision_macro == doctest::Approx(b.precision_macro).epsilon(1e-15));
  CHECK(a.recall_weighted == doctest::Approx(b.recall_weighted).epsilon(1e-15));
  for (int c = 0; c < 4; ++c) CHECK(a.f1[c] == b.f1[perm[c]]);
}

TEST_CASE("confusion csv grid") {
  const auto cm = confusion_matrix(Labels{0, 0, 1, 1}, Labels{0, 1, 1, 1}, 2, {"dry", "wet"});
  CHECK(confusion_csv(cm) == "true\\predicted,dry,wet\ndry,1,1\nwet,0,2\n");
}

TEST_CASE("report rendering") {
  CHECK(percent_cell(0.92514, 2) == "92.51%");
  CHECK(percent_cell(0.917, 2) == "91.70%");
  CHECK(percent_cell(0.886, 0) == "89%");
  const auto s = classification_scores(confusion_matrix(Labels{0, 0, 1, 1}, Labels{0, 1, 1, 1}, 2));
  const auto r = render_report({{"Ada Boost", s}}, "precipitation");
  CHECK(r.table.find("Algorithm Efficiency Overview of Precipitation") != std::string::npos);
  CHECK(r.table.find("| Ada Boost |   75.00% |       83% |    75% |      73% |") != std::string::npos);
  std::istringstream csv(r.csv);
  std::string header, row;
  std::getline(csv, header);
  std::getline(csv, row);
  CHECK(header == kMetricsCsvHeader);
  const auto cells = split(row, ',');
  REQUIRE(cells.size() == 9);
  CHECK(cells[0] == "Ada Boost");
  CHECK(cells[1] == "precipitation");
  double v = 0.0;
  REQUIRE(parse_double(cells[5], v));
  CHECK(v == s.f1_macro);
  CHECK_THROWS_AS(render_report({}, "precipitation"), InvalidArgument);
}

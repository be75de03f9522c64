#include <doctest.h>

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "wxbench/core/errors.hpp"
#include "wxbench/ingest/power_csv.hpp"
#include "wxbench/preprocess/dataset.hpp"
#include "wxbench/preprocess/features.hpp"
#include "wxbench/preprocess/scaler.hpp"
#include "wxbench/preprocess/split.hpp"
#include "wxbench/preprocess/target.hpp"

using namespace wxbench;
using namespace wxbench::preprocess;

TEST_CASE("minmax fit and apply") {
  const Matrix x{{2, 5}, {4, 5}, {6, 5}};
  const auto p = fit_minmax(x);
  CHECK(p.min == std::vector<double>{2, 5});
  CHECK(p.max == std::vector<double>{6, 5});
  const auto s = apply_minmax(p, x);
  CHECK(s == Matrix{{0, 0}, {0.5, 0}, {1, 0}});
  CHECK(apply_minmax(p, Matrix{{8, 9}})(0, 0) == 1.5);
  CHECK(apply_minmax(p, Matrix{{0, 9}})(0, 0) == -0.5);
  CHECK(invert_minmax(p, Matrix{{0, 0}, {1, 0}}).column(0) == std::vector<double>{2, 6});
  CHECK_THROWS_AS(fit_minmax(Matrix{}), InvalidArgument);
  CHECK_THROWS_AS(apply_minmax(p, Matrix{{1, 2, 3}}), InvalidArgument);
  CHECK_THROWS_AS(invert_minmax(p, Matrix{{1}}), InvalidArgument);
}

TEST_CASE("minmax extrema equal a brute-force scan of the fixture") {
  const auto table = ingest::load_power_csv(wxtest::fixture("dhaka_2021.csv"));
  const auto p = fit_minmax(table.feature_matrix());
  double lo = 1e300;
  double hi = -1e300;
  for (const auto& r : table.records()) {
    lo = std::min(lo, r[ingest::Feature::T2M]);
    hi = std::max(hi, r[ingest::Feature::T2M]);
  }
  CHECK(p.min[0] == lo);
  CHECK(p.max[0] == hi);
}

TEST_CASE("minmax round trip on fuzzed matrices") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto x = wxtest::random_matrix(30, 5, seed, -100, 100);
    const auto p = fit_minmax(x);
    const auto back = invert_minmax(p, apply_minmax(p, x));
    for (std::size_t i = 0; i < x.data().size(); ++i) CHECK(back.data()[i] == doctest::Approx(x.data()[i]).epsilon(1e-12));
  }
}

TEST_CASE("precipitation bands") {
  const std::vector<double> v{0, 5, 20, 50};
  const auto t = discretize_target(v, PrecipClasses{});
  CHECK(t.labels == Labels{0, 1, 2, 3});
  CHECK(t.class_names == std::vector<std::string>{"dry", "light", "moderate", "heavy"});
  const auto b = fit_binning(PrecipClasses{}, v);
  CHECK(b.label_of(0.1) == 1);
  CHECK(b.label_of(0.0999) == 0);
  CHECK(b.label_of(10.0) == 2);
  CHECK(b.label_of(35.0) == 3);
}

TEST_CASE("empty class is an error") {
  const std::vector<double> v{0, 0.5, 20};
  CHECK_THROWS_WITH_AS(discretize_target(v, PrecipClasses{}), doctest::Contains("heavy"), DataError);
}

TEST_CASE("temperature quantiles on an integer ramp") {
  std::vector<double> v(100);
  for (int i = 0; i < 100; ++i) v[i] = i + 1;
  const auto t = discretize_target(v, TempQuantiles{4});
  CHECK(t.binning.edges.size() == 3);
  CHECK(t.binning.edges[0] == doctest::Approx(25.75));
  CHECK(t.binning.edges[1] == doctest::Approx(50.5));
  CHECK(t.binning.edges[2] == doctest::Approx(75.25));
  for (int c = 0; c < 4; ++c) CHECK(std::count(t.labels.begin(), t.labels.end(), c) == 25);
  CHECK(t.class_names == std::vector<std::string>{"q1", "q2", "q3", "q4"});
}

TEST_CASE("quantile edges go to the lower bin") {
  Binning b;
  b.edges = {2.0};
  b.class_names = {"lo", "hi"};
  b.edge_goes_up = false;
  CHECK(b.label_of(2.0) == 0);
  CHECK(b.label_of(2.0000001) == 1);
  CHECK(quantile({1, 2, 3, 4}, 0.5) == 2.5);
  CHECK(quantile({7}, 0.3) == 7.0);
}

TEST_CASE("quantile edges come from the fit rows only") {
  std::vector<double> v{1, 2, 3, 4, 100, 200, 300, 400};
  const std::vector<std::size_t> fit{0, 1, 2, 3};
  const auto t = discretize_target(v, TempQuantiles{2}, fit);
  CHECK(t.binning.edges[0] == doctest::Approx(2.5));
  CHECK(t.labels == Labels{0, 0, 1, 1, 1, 1, 1, 1});
}

TEST_CASE("discretization is monotone") {
  Rng rng(5);
  std::vector<double> v(500);
  for (auto& x : v) x = rng.uniform(0, 80);
  for (const DiscretizationScheme& s : {DiscretizationScheme{PrecipClasses{}}, DiscretizationScheme{TempQuantiles{5}}}) {
    const auto b = fit_binning(s, v);
    auto sorted = v;
    std::sort(sorted.begin(), sorted.end());
    const auto labels = apply_binning(b, sorted);
    CHECK(std::is_sorted(labels.begin(), labels.end()));
  }
}

TEST_CASE("feature selection per target") {
  const auto table = ingest::load_power_csv(wxtest::fixture("dhaka_2021.csv"));
  const auto p = select_features(table, Target::precipitation);
  CHECK(p.names.size() == 15);
  CHECK(std::find(p.names.begin(), p.names.end(), "PRECTOT") == p.names.end());
  CHECK(p.names.front() == "T2M");
  CHECK(p.names.back() == "WS10M_MIN");
  const auto t = select_features(table, Target::temperature);
  CHECK(t.names == std::vector<std::string>{"T2MDEW", "QV2M", "RH2M", "PRECTOT", "PS", "WS10M_RANGE", "WS10M", "WD10M",
                                            "WS10M_MAX", "WS10M_MIN"});
  for (const auto& n : t.names) {
    CHECK(n.rfind("TS", 0) != 0);
    CHECK((n.rfind("T2M", 0) != 0 || n == "T2MDEW"));
  }
}

TEST_CASE("split sizes and partition") {
  CHECK(split_train_test(7306, 0.15, 1).test_idx.size() == 1096);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto s = split_train_test(20, 0.15, seed);
    CHECK(s.test_idx.size() == 3);
    std::set<std::size_t> all(s.train_idx.begin(), s.train_idx.end());
    for (auto i : s.test_idx) CHECK(all.insert(i).second);
    CHECK(all.size() == 20);
    CHECK(*all.rbegin() == 19);
  }
  CHECK(split_train_test(500, 0.2, 9) == split_train_test(500, 0.2, 9));
  CHECK(split_train_test(500, 0.2, 9).test_idx != split_train_test(500, 0.2, 10).test_idx);
  CHECK_THROWS_AS(split_train_test(5, 0.01, 1), InvalidArgument);
  CHECK_THROWS_AS(split_train_test(5, 0.99, 1), InvalidArgument);
  CHECK_THROWS_AS(split_train_test(1, 0.5, 1), InvalidArgument);
}

TEST_CASE("split property over random sizes") {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = 2 + static_cast<std::size_t>(rng.below(400));
    const double frac = rng.uniform(0.05, 0.95);
    const auto expected = static_cast<std::size_t>(std::llround(frac * static_cast<double>(n)));
    if (expected == 0 || expected == n) continue;
    const auto s = split_train_test(n, frac, trial);
    CHECK(s.test_idx.size() == expected);
    CHECK(s.train_idx.size() + s.test_idx.size() == n);
  }
}

TEST_CASE("prepared data: scaler fitted on train only") {
  const auto table = ingest::load_power_csv(wxtest::fixture("dhaka_2003_2023.csv"));
  PrepareOptions o;
  o.split_seed = 3;
  const auto d = prepare_dataset(table, o);
  CHECK(d.test.size() == 1096);
  CHECK(d.train.size() == 7306 - 1096);
  CHECK(d.train.features.cols() == 15);
  for (std::size_t c = 0; c < d.train.features.cols(); ++c) {
    const auto col = d.train.features.column(c);
    CHECK(*std::min_element(col.begin(), col.end()) == 0.0);
    CHECK(*std::max_element(col.begin(), col.end()) == 1.0);
  }
  CHECK(d.train.n_classes() == 4);
  CHECK_NOTHROW(validate_dataset(d.train, true));
  CHECK(prepare_dataset(table, o).test.features == d.test.features);
}

TEST_CASE("lagged targets pair each day with a later day") {
  const auto table = ingest::load_power_csv(wxtest::fixture("dhaka_2021.csv"));
  const auto same = make_supervised(table, Target::precipitation, 0);
  const auto next = make_supervised(table, Target::precipitation, 1);
  CHECK(same.target.size() == 365);
  CHECK(next.target.size() == 364);
  CHECK(next.target[0] == same.target[1]);
  CHECK(next.features.row(0)[0] == same.features.row(0)[0]);
}

#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "wxbench/core/errors.hpp"
#include "wxbench/stacking/stacking.hpp"

using namespace wxbench;
using namespace wxbench::stacking;

namespace {

models::GbmConfig small_gbm() {
  models::GbmConfig c;
  c.params.rounds = 10;
  return c;
}

models::AdaBoostConfig small_ada() {
  models::AdaBoostConfig c;
  c.params.rounds = 10;
  return c;
}

StackingSpec small_spec(models::ModelConfig meta, std::size_t folds, std::uint64_t seed) {
  StackingSpec s;
  s.base_learners = {small_gbm(), small_ada(), models::CartConfig{}};
  s.meta_learner = std::move(meta);
  s.n_folds = folds;
  s.seed = seed;
  return s;
}

models::ForestConfig small_forest(std::optional<std::size_t> max_features = {}) {
  models::ForestConfig c;
  c.params.n_trees = 20;
  c.params.max_features = max_features;
  return c;
}

}  // namespace

TEST_CASE("folds partition the rows into near-equal runs") {
  for (std::size_t folds : {2, 3, 5, 7}) {
    const auto f = make_folds(23, folds, 4);
    std::set<std::size_t> all;
    for (const auto& fold : f) {
      CHECK((fold.size() == 23 / folds || fold.size() == 23 / folds + 1));
      all.insert(fold.begin(), fold.end());
    }
    CHECK(all.size() == 23);
  }
  CHECK(make_folds(23, 5, 4) == make_folds(23, 5, 4));
  CHECK_THROWS_AS(make_folds(3, 4, 1), InvalidArgument);
  CHECK_THROWS_AS(make_folds(3, 1, 1), InvalidArgument);
}

TEST_CASE("leave-one-out on six rows") {
  const Matrix x{{0}, {1}, {2}, {10}, {11}, {12}};
  const Labels y{0, 0, 0, 1, 1, 1};
  const auto oof = oof_meta_features(small_spec(small_forest(), 6, 3), x, y, 2);
  std::size_t per_base = 0;
  for (const auto& rec : oof.log) {
    if (rec.base != 0) continue;
    ++per_base;
    CHECK(rec.scored_rows.size() == 1);
    CHECK(rec.train_rows.size() == 5);
  }
  CHECK(per_base == 6);
}

TEST_CASE("out-of-fold features never come from a model that saw the row") {
  Matrix x;
  Labels y;
  wxtest::blobs(60, 3, 3, 2, x, y, 1.5);
  for (std::size_t folds : {2, 4, 5}) {
    const auto oof = oof_meta_features(small_spec(small_forest(), folds, folds * 11), x, y, 3);
    std::vector<int> scored(60 * 3, 0);
    for (const auto& rec : oof.log) {
      const std::set<std::size_t> train(rec.train_rows.begin(), rec.train_rows.end());
      for (auto r : rec.scored_rows) {
        CHECK(train.count(r) == 0);
        CHECK(oof.fold_of[r] == rec.fold);
        ++scored[r * 3 + rec.base];
      }
    }
    for (int s : scored) CHECK(s == 1);
  }
}

TEST_CASE("meta layout is bases x classes with simplex blocks") {
  Matrix x;
  Labels y;
  wxtest::blobs(60, 3, 3, 4, x, y, 1.5);
  const auto oof = oof_meta_features(small_spec(small_forest(), 5, 1), x, y, 3);
  CHECK(oof.meta.cols() == 9);
  for (std::size_t r = 0; r < 60; ++r) {
    for (std::size_t b = 0; b < 3; ++b) {
      double s = 0.0;
      for (std::size_t k = 0; k < 3; ++k) s += oof.meta(r, b * 3 + k);
      CHECK(std::abs(s - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("a fold missing a class is reported") {
  const Matrix x{{0}, {1}, {2}, {3}, {4}, {5}};
  const Labels y{0, 0, 0, 0, 0, 1};
  CHECK_THROWS_WITH_AS(oof_meta_features(small_spec(small_forest(), 3, 1), x, y, 2),
                       doctest::Contains("class 1"), DataError);
}

TEST_CASE("spec validation") {
  auto s = small_spec(small_forest(), 5, 1);
  s.base_learners.resize(1);
  CHECK_THROWS_AS(validate_spec(s), InvalidArgument);
  s = small_spec(models::CartConfig{}, 5, 1);
  CHECK_THROWS_AS(validate_spec(s), InvalidArgument);
  s = small_spec(small_forest(), 1, 1);
  CHECK_THROWS_AS(validate_spec(s), InvalidArgument);
}

TEST_CASE("perfect bases pass through the forest meta-learner") {
  Matrix x;
  Labels y;
  wxtest::blobs(90, 2, 3, 6, x, y, 0.2);
  Matrix xt;
  Labels yt;
  wxtest::blobs(30, 2, 3, 7, xt, yt, 0.2);
  const auto model = fit_stacking(small_spec(small_forest(), 5, 2), x, y, 3);
  for (const auto& b : model->bases()) CHECK(b->predict(xt).labels == yt);
  CHECK(model->predict(xt).labels == yt);
}

TEST_CASE("prediction equals the meta-learner applied to concatenated base probabilities") {
  Matrix x;
  Labels y;
  wxtest::blobs(80, 3, 2, 8, x, y, 2.0);
  auto spec = small_spec(small_forest(), 4, 5);
  spec.base_learners = {small_gbm(), models::CartConfig{}};
  const auto model = fit_stacking(spec, x, y, 2);
  const auto q = wxtest::random_matrix(25, 3, 9, -4, 4);
  Matrix manual(q.rows(), 4);
  for (std::size_t b = 0; b < 2; ++b) {
    const auto p = model->bases()[b]->predict(q).proba;
    for (std::size_t r = 0; r < q.rows(); ++r) {
      for (std::size_t k = 0; k < 2; ++k) manual(r, b * 2 + k) = p(r, k);
    }
  }
  CHECK(model->meta_features(q) == manual);
  const auto direct = model->meta()->predict(manual);
  const auto stacked = model->predict(q);
  CHECK(stacked.labels == direct.labels);
  CHECK(stacked.proba == direct.proba);
  for (std::size_t r = 0; r < q.rows(); ++r) {
    const auto one = model->predict(q.select_rows(std::vector<std::size_t>{r}));
    CHECK(one.labels[0] == stacked.labels[r]);
  }
}

TEST_CASE("reordering bases permutes meta blocks") {
  Matrix x;
  Labels y;
  wxtest::blobs(120, 4, 3, 10, x, y, 1.8);
  const auto q = wxtest::random_matrix(40, 4, 11, -5, 5);
  auto spec = small_spec(small_forest(9), 5, 7);
  const auto a = fit_stacking(spec, x, y, 3);
  std::swap(spec.base_learners[0], spec.base_learners[2]);
  const auto b = fit_stacking(spec, x, y, 3);
  const auto ma = a->meta_features(q);
  const auto mb = b->meta_features(q);
  for (std::size_t r = 0; r < q.rows(); ++r) {
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(ma(r, 0 * 3 + k) == mb(r, 2 * 3 + k));
      CHECK(ma(r, 1 * 3 + k) == mb(r, 1 * 3 + k));
      CHECK(ma(r, 2 * 3 + k) == mb(r, 0 * 3 + k));
    }
  }
}

TEST_CASE("forest predictions are invariant to column order without gain ties") {
  const auto x = wxtest::random_matrix(150, 6, 21);
  const auto y = wxtest::random_labels(150, 3, 22);
  const auto q = wxtest::random_matrix(60, 6, 23);
  const std::vector<std::size_t> perm{4, 2, 0, 5, 1, 3};
  Matrix xp(x.rows(), 6);
  Matrix qp(q.rows(), 6);
  for (std::size_t c = 0; c < 6; ++c) {
    for (std::size_t r = 0; r < x.rows(); ++r) xp(r, c) = x(r, perm[c]);
    for (std::size_t r = 0; r < q.rows(); ++r) qp(r, c) = q(r, perm[c]);
  }
  // Large leaves keep equal-gain splits across features out of the picture;
  // the lowest-feature tie rule is order dependent by construction.
  auto cfg = small_forest(6);
  cfg.params.tree.max_depth = 3;
  cfg.params.tree.min_samples_leaf = 15;
  const auto a = models::fit_model(cfg, x, y, 3, 5);
  const auto b = models::fit_model(cfg, xp, y, 3, 5);
  CHECK(a->predict(q).labels == b->predict(qp).labels);
  CHECK(a->predict(q).proba == b->predict(qp).proba);
}

TEST_CASE("stacking is deterministic and persists") {
  Matrix x;
  Labels y;
  wxtest::blobs(60, 3, 2, 12, x, y, 1.5);
  for (models::ModelConfig meta : {models::ModelConfig{small_forest()}, models::ModelConfig{models::KnnConfig{5}},
                                   models::ModelConfig{models::MlpConfig{{8}, {.epochs = 20}}}}) {
    const auto spec = small_spec(meta, 3, 9);
    const auto a = fit_stacking(spec, x, y, 2);
    const auto b = fit_stacking(spec, x, y, 2);
    CHECK(a->to_json().dump() == b->to_json().dump());
    const auto restored = model_from_json(a->to_json());
    CHECK(restored->predict(x).proba == a->predict(x).proba);
    CHECK(restored->to_json().dump() == a->to_json().dump());
  }
}

TEST_CASE("a shared base layer serves every meta-learner") {
  Matrix x;
  Labels y;
  wxtest::blobs(60, 3, 3, 13, x, y, 1.5);
  const auto spec = small_spec(models::KnnConfig{5}, 4, 3);
  const auto layer = fit_base_layer(spec, x, y, 3);
  CHECK(layer.oof_accuracy.size() == 3);
  const auto via_layer = fit_meta(spec, layer, y, 3, x.cols());
  const auto direct = fit_stacking(spec, x, y, 3);
  CHECK(via_layer->to_json().dump() == direct->to_json().dump());
}

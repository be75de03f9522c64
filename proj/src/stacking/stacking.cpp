#include "wxbench/stacking/stacking.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "wxbench/core/errors.hpp"
#include "wxbench/core/random.hpp"

namespace wxbench::stacking {
namespace {

/// Seed label per base: kind plus its occurrence among bases of that kind, so a
/// reordered spec reuses the same seed for the same learner.
std::vector<std::uint64_t> base_seeds(const StackingSpec& spec) {
  std::map<std::string, int> seen;
  std::vector<std::uint64_t> out;
  for (const auto& cfg : spec.base_learners) {
    const std::string kind(models::model_kind(cfg));
    const int occurrence = seen[kind]++;
    out.push_back(derive_seed(spec.seed, "base:" + kind + "#" + std::to_string(occurrence)));
  }
  return out;
}

}  // namespace

void validate_spec(const StackingSpec& spec) {
  if (spec.base_learners.size() < 2) throw InvalidArgument("stacking: need at least 2 base learners");
  if (spec.n_folds < 2) throw InvalidArgument("stacking: n_folds must be >= 2");
  const auto meta = models::model_kind(spec.meta_learner);
  if (meta != "forest" && meta != "mlp" && meta != "knn") {
    throw InvalidArgument("stacking: meta-learner must be forest, mlp or knn, got " + std::string(meta));
  }
}

std::vector<std::vector<std::size_t>> make_folds(std::size_t n, std::size_t n_folds, std::uint64_t seed) {
  if (n_folds < 2) throw InvalidArgument("stacking: n_folds must be >= 2");
  if (n_folds > n) {
    throw InvalidArgument("stacking: n_folds=" + std::to_string(n_folds) + " exceeds " + std::to_string(n) + " rows");
  }
  Rng rng(derive_seed(seed, "folds"));
  const auto perm = rng.permutation(n);
  std::vector<std::vector<std::size_t>> folds(n_folds);
  std::size_t pos = 0;
  for (std::size_t f = 0; f < n_folds; ++f) {
    const std::size_t size = n / n_folds + (f < n % n_folds ? 1 : 0);
    folds[f].assign(perm.begin() + static_cast<std::ptrdiff_t>(pos), perm.begin() + static_cast<std::ptrdiff_t>(pos + size));
    std::sort(folds[f].begin(), folds[f].end());
    pos += size;
  }
  return folds;
}

OofResult oof_meta_features(const StackingSpec& spec, const Matrix& x, std::span<const int> y, std::size_t n_classes) {
  validate_spec(spec);
  if (y.size() != x.rows()) throw InvalidArgument("stacking: label count does not match rows");
  const std::size_t n = x.rows();
  const std::size_t b_count = spec.base_learners.size();
  const auto folds = make_folds(n, spec.n_folds, spec.seed);
  const auto seeds = base_seeds(spec);

  OofResult out;
  out.meta = Matrix(n, b_count * n_classes);
  out.fold_of.assign(n, 0);
  for (std::size_t f = 0; f < folds.size(); ++f) {
    for (auto i : folds[f]) out.fold_of[i] = f;
  }

  for (std::size_t f = 0; f < folds.size(); ++f) {
    std::vector<std::size_t> train_rows;
    train_rows.reserve(n - folds[f].size());
    for (std::size_t i = 0; i < n; ++i) {
      if (out.fold_of[i] != f) train_rows.push_back(i);
    }
    const Matrix x_train = x.select_rows(train_rows);
    const Labels y_train = select<int>(y, train_rows);
    std::vector<bool> present(n_classes, false);
    for (int l : y_train) present[static_cast<std::size_t>(l)] = true;
    for (std::size_t c = 0; c < n_classes; ++c) {
      if (!present[c]) {
        throw DataError("stacking: training rows of fold " + std::to_string(f) + " contain no samples of class " +
                        std::to_string(c));
      }
    }
    const Matrix x_scored = x.select_rows(folds[f]);
    for (std::size_t b = 0; b < b_count; ++b) {
      const auto model = models::fit_model(spec.base_learners[b], x_train, y_train, n_classes, derive_seed(seeds[b], f));
      const auto pred = model->predict(x_scored);
      for (std::size_t r = 0; r < folds[f].size(); ++r) {
        const auto src = pred.proba.row(r);
        std::copy(src.begin(), src.end(), out.meta.row(folds[f][r]).begin() + static_cast<std::ptrdiff_t>(b * n_classes));
      }
      out.log.push_back(FoldRecord{f, b, train_rows, folds[f]});
    }
  }
  return out;
}

BaseLayer fit_base_layer(const StackingSpec& spec, const Matrix& x, std::span<const int> y, std::size_t n_classes) {
  BaseLayer layer;
  layer.oof = oof_meta_features(spec, x, y, n_classes);
  const auto seeds = base_seeds(spec);
  for (std::size_t b = 0; b < spec.base_learners.size(); ++b) {
    layer.bases.push_back(models::fit_model(spec.base_learners[b], x, y, n_classes, derive_seed(seeds[b], "refit")));
    std::size_t correct = 0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
      const auto row = layer.oof.meta.row(i).subspan(b * n_classes, n_classes);
      if (static_cast<int>(argmax(row)) == y[i]) ++correct;
    }
    layer.oof_accuracy.push_back(static_cast<double>(correct) / static_cast<double>(x.rows()));
  }
  return layer;
}

StackingModel::StackingModel(StackingSpec spec, std::vector<models::TrainedModel> bases, models::TrainedModel meta,
                             std::size_t n_classes, std::size_t n_features, std::vector<double> base_oof_accuracy)
    : spec_(std::move(spec)),
      bases_(std::move(bases)),
      meta_(std::move(meta)),
      n_classes_(n_classes),
      n_features_(n_features),
      base_oof_accuracy_(std::move(base_oof_accuracy)) {
  if (meta_->n_features() != bases_.size() * n_classes_) {
    throw InvalidArgument("stacking: meta-learner input width must be bases x classes");
  }
}

Matrix StackingModel::meta_features(const Matrix& x) const {
  if (x.cols() != n_features_) {
    throw InvalidArgument("predict_stacking: expected " + std::to_string(n_features_) + " columns, got " +
                          std::to_string(x.cols()));
  }
  Matrix meta(x.rows(), bases_.size() * n_classes_);
  for (std::size_t b = 0; b < bases_.size(); ++b) {
    const auto pred = bases_[b]->predict(x);
    for (std::size_t r = 0; r < x.rows(); ++r) {
      const auto src = pred.proba.row(r);
      std::copy(src.begin(), src.end(), meta.row(r).begin() + static_cast<std::ptrdiff_t>(b * n_classes_));
    }
  }
  return meta;
}

ClassPrediction StackingModel::predict(const Matrix& x) const { return meta_->predict(meta_features(x)); }

nlohmann::ordered_json StackingModel::to_json() const {
  nlohmann::ordered_json j;
  j["kind"] = "stacking";
  j["n_classes"] = n_classes_;
  j["n_features"] = n_features_;
  nlohmann::ordered_json spec;
  spec["n_folds"] = spec_.n_folds;
  spec["seed"] = spec_.seed;
  spec["base_learners"] = nlohmann::ordered_json::array();
  for (const auto& c : spec_.base_learners) spec["base_learners"].push_back(models::config_to_json(c));
  spec["meta_learner"] = models::config_to_json(spec_.meta_learner);
  j["spec"] = std::move(spec);
  j["base_oof_accuracy"] = base_oof_accuracy_;
  j["bases"] = nlohmann::ordered_json::array();
  for (const auto& b : bases_) j["bases"].push_back(b->to_json());
  j["meta"] = meta_->to_json();
  return j;
}

std::shared_ptr<const StackingModel> fit_meta(const StackingSpec& spec, const BaseLayer& layer, std::span<const int> y,
                                              std::size_t n_classes, std::size_t n_features) {
  validate_spec(spec);
  auto meta = models::fit_model(spec.meta_learner, layer.oof.meta, y, n_classes, derive_seed(spec.seed, "meta"));
  return std::make_shared<const StackingModel>(spec, layer.bases, std::move(meta), n_classes, n_features,
                                               layer.oof_accuracy);
}

std::shared_ptr<const StackingModel> fit_stacking(const StackingSpec& spec, const Matrix& x, std::span<const int> y,
                                                  std::size_t n_classes) {
  const auto layer = fit_base_layer(spec, x, y, n_classes);
  return fit_meta(spec, layer, y, n_classes, x.cols());
}

ClassPrediction predict_stacking(const StackingModel& model, const Matrix& x) { return model.predict(x); }

models::TrainedModel model_from_json(const nlohmann::ordered_json& j) {
  if (j.at("kind") != "stacking") return models::base_model_from_json(j);
  std::vector<models::TrainedModel> bases;
  for (const auto& b : j.at("bases")) bases.push_back(models::base_model_from_json(b));
  auto meta = models::base_model_from_json(j.at("meta"));
  StackingSpec spec;
  spec.n_folds = j.at("spec").at("n_folds").get<std::size_t>();
  spec.seed = j.at("spec").at("seed").get<std::uint64_t>();
  spec.base_learners.clear();
  for (const auto& c : j.at("spec").at("base_learners")) spec.base_learners.push_back(models::config_from_json(c));
  spec.meta_learner = models::config_from_json(j.at("spec").at("meta_learner"));
  return std::make_shared<const StackingModel>(std::move(spec), std::move(bases), std::move(meta),
                                               j.at("n_classes").get<std::size_t>(), j.at("n_features").get<std::size_t>(),
                                               j.at("base_oof_accuracy").get<std::vector<double>>());
}

}  // namespace wxbench::stacking

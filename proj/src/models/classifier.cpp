#include "wxbench/models/classifier.hpp"

#include <string>

#include "wxbench/core/errors.hpp"
#include "wxbench/core/random.hpp"

namespace wxbench::models {
namespace {

template <typename Model>
class Adapter;

template <>
class Adapter<cart::DecisionTree> final : public Classifier {
 public:
  explicit Adapter(cart::DecisionTree m) : m_(std::move(m)) {}
  std::string_view kind() const noexcept override { return "cart"; }
  std::size_t n_classes() const noexcept override { return m_.n_outputs(); }
  std::size_t n_features() const noexcept override { return m_.n_features(); }
  ClassPrediction predict(const Matrix& x) const override {
    ClassPrediction p;
    p.proba = cart::predict_cart(m_, x);
    p.labels = labels_from_scores(p.proba);
    return p;
  }
  nlohmann::ordered_json to_json() const override { return cart::to_json(m_); }

 private:
  cart::DecisionTree m_;
};

template <>
class Adapter<ensembles::AdaBoostModel> final : public Classifier {
 public:
  explicit Adapter(ensembles::AdaBoostModel m) : m_(std::move(m)) {}
  std::string_view kind() const noexcept override { return "adaboost"; }
  std::size_t n_classes() const noexcept override { return m_.n_classes; }
  std::size_t n_features() const noexcept override { return m_.n_features; }
  ClassPrediction predict(const Matrix& x) const override { return ensembles::predict_adaboost(m_, x); }
  nlohmann::ordered_json to_json() const override { return ensembles::to_json(m_); }

 private:
  ensembles::AdaBoostModel m_;
};

template <>
class Adapter<ensembles::GbmModel> final : public Classifier {
 public:
  explicit Adapter(ensembles::GbmModel m) : m_(std::move(m)) {}
  std::string_view kind() const noexcept override { return "gbm"; }
  std::size_t n_classes() const noexcept override { return m_.n_classes; }
  std::size_t n_features() const noexcept override { return m_.n_features; }
  ClassPrediction predict(const Matrix& x) const override { return ensembles::predict_gbm(m_, x); }
  nlohmann::ordered_json to_json() const override { return ensembles::to_json(m_); }

 private:
  ensembles::GbmModel m_;
};

template <>
class Adapter<ensembles::ForestModel> final : public Classifier {
 public:
  explicit Adapter(ensembles::ForestModel m) : m_(std::move(m)) {}
  std::string_view kind() const noexcept override { return "forest"; }
  std::size_t n_classes() const noexcept override { return m_.n_classes; }
  std::size_t n_features() const noexcept override { return m_.n_features; }
  ClassPrediction predict(const Matrix& x) const override { return ensembles::predict_forest(m_, x); }
  nlohmann::ordered_json to_json() const override { return ensembles::to_json(m_); }

 private:
  ensembles::ForestModel m_;
};

template <>
class Adapter<learners::MlpModel> final : public Classifier {
 public:
  explicit Adapter(learners::MlpModel m) : m_(std::move(m)) {}
  std::string_view kind() const noexcept override { return "mlp"; }
  std::size_t n_classes() const noexcept override { return m_.n_classes(); }
  std::size_t n_features() const noexcept override { return m_.n_inputs(); }
  ClassPrediction predict(const Matrix& x) const override { return learners::predict_mlp(m_, x); }
  nlohmann::ordered_json to_json() const override { return learners::to_json(m_); }

 private:
  learners::MlpModel m_;
};

template <>
class Adapter<learners::KnnModel> final : public Classifier {
 public:
  explicit Adapter(learners::KnnModel m) : m_(std::move(m)) {}
  std::string_view kind() const noexcept override { return "knn"; }
  std::size_t n_classes() const noexcept override { return m_.n_classes; }
  std::size_t n_features() const noexcept override { return m_.x.cols(); }
  ClassPrediction predict(const Matrix& x) const override { return learners::predict_knn(m_, x); }
  nlohmann::ordered_json to_json() const override { return learners::to_json(m_); }

 private:
  learners::KnnModel m_;
};

nlohmann::ordered_json tree_params_json(const cart::TreeParams& p) {
  nlohmann::ordered_json j;
  j["max_depth"] = p.max_depth;
  j["min_samples_leaf"] = p.min_samples_leaf;
  j["criterion"] = std::string(cart::to_string(p.criterion));
  if (p.feature_subsample) j["feature_subsample"] = *p.feature_subsample;
  return j;
}

cart::TreeParams tree_params_from_json(const nlohmann::ordered_json& j, cart::TreeParams p) {
  if (j.contains("max_depth")) p.max_depth = j.at("max_depth").get<int>();
  if (j.contains("min_samples_leaf")) p.min_samples_leaf = j.at("min_samples_leaf").get<int>();
  if (j.contains("criterion")) p.criterion = j.at("criterion") == "gini" ? cart::Criterion::gini : cart::Criterion::mse;
  if (j.contains("feature_subsample")) p.feature_subsample = j.at("feature_subsample").get<std::size_t>();
  return p;
}

template <typename T>
void read_if(const nlohmann::ordered_json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

TrainedModel wrap(cart::DecisionTree tree) { return std::make_shared<Adapter<cart::DecisionTree>>(std::move(tree)); }
TrainedModel wrap(ensembles::AdaBoostModel model) {
  return std::make_shared<Adapter<ensembles::AdaBoostModel>>(std::move(model));
}
TrainedModel wrap(ensembles::GbmModel model) { return std::make_shared<Adapter<ensembles::GbmModel>>(std::move(model)); }
TrainedModel wrap(ensembles::ForestModel model) {
  return std::make_shared<Adapter<ensembles::ForestModel>>(std::move(model));
}
TrainedModel wrap(learners::MlpModel model) { return std::make_shared<Adapter<learners::MlpModel>>(std::move(model)); }
TrainedModel wrap(learners::KnnModel model) { return std::make_shared<Adapter<learners::KnnModel>>(std::move(model)); }

std::string_view model_kind(const ModelConfig& config) noexcept {
  struct Visitor {
    std::string_view operator()(const CartConfig&) const { return "cart"; }
    std::string_view operator()(const AdaBoostConfig&) const { return "adaboost"; }
    std::string_view operator()(const GbmConfig&) const { return "gbm"; }
    std::string_view operator()(const ForestConfig&) const { return "forest"; }
    std::string_view operator()(const MlpConfig&) const { return "mlp"; }
    std::string_view operator()(const KnnConfig&) const { return "knn"; }
  };
  return std::visit(Visitor{}, config);
}

ModelConfig default_config(std::string_view kind) {
  if (kind == "cart") return CartConfig{};
  if (kind == "adaboost") return AdaBoostConfig{};
  if (kind == "gbm") return GbmConfig{};
  if (kind == "forest") return ForestConfig{};
  if (kind == "mlp") return MlpConfig{};
  if (kind == "knn") return KnnConfig{};
  throw InvalidArgument("unknown model kind '" + std::string(kind) + "'");
}

nlohmann::ordered_json config_to_json(const ModelConfig& config) {
  nlohmann::ordered_json j;
  j["kind"] = std::string(model_kind(config));
  if (const auto* c = std::get_if<CartConfig>(&config)) {
    j["tree"] = tree_params_json(c->tree);
  } else if (const auto* a = std::get_if<AdaBoostConfig>(&config)) {
    j["rounds"] = a->params.rounds;
    j["tree"] = tree_params_json(a->params.tree);
  } else if (const auto* g = std::get_if<GbmConfig>(&config)) {
    j["rounds"] = g->params.rounds;
    j["learning_rate"] = g->params.learning_rate;
    j["tree"] = tree_params_json(g->params.tree);
  } else if (const auto* f = std::get_if<ForestConfig>(&config)) {
    j["n_trees"] = f->params.n_trees;
    j["bootstrap"] = f->params.bootstrap;
    if (f->params.max_features) j["max_features"] = *f->params.max_features;
    j["tree"] = tree_params_json(f->params.tree);
  } else if (const auto* m = std::get_if<MlpConfig>(&config)) {
    j["hidden"] = m->hidden;
    j["epochs"] = m->train.epochs;
    j["batch_size"] = m->train.batch_size;
    j["learning_rate"] = m->train.learning_rate;
    j["momentum"] = m->train.momentum;
  } else if (const auto* k = std::get_if<KnnConfig>(&config)) {
    j["k"] = k->k;
  }
  return j;
}

ModelConfig config_from_json(const nlohmann::ordered_json& j) {
  auto config = default_config(j.at("kind").get<std::string>());
  const auto tree = [&](cart::TreeParams& p) {
    if (j.contains("tree")) p = tree_params_from_json(j.at("tree"), p);
  };
  if (auto* c = std::get_if<CartConfig>(&config)) {
    tree(c->tree);
  } else if (auto* a = std::get_if<AdaBoostConfig>(&config)) {
    read_if(j, "rounds", a->params.rounds);
    tree(a->params.tree);
  } else if (auto* g = std::get_if<GbmConfig>(&config)) {
    read_if(j, "rounds", g->params.rounds);
    read_if(j, "learning_rate", g->params.learning_rate);
    tree(g->params.tree);
  } else if (auto* f = std::get_if<ForestConfig>(&config)) {
    read_if(j, "n_trees", f->params.n_trees);
    read_if(j, "bootstrap", f->params.bootstrap);
    if (j.contains("max_features")) f->params.max_features = j.at("max_features").get<std::size_t>();
    tree(f->params.tree);
  } else if (auto* m = std::get_if<MlpConfig>(&config)) {
    read_if(j, "hidden", m->hidden);
    read_if(j, "epochs", m->train.epochs);
    read_if(j, "batch_size", m->train.batch_size);
    read_if(j, "learning_rate", m->train.learning_rate);
    read_if(j, "momentum", m->train.momentum);
  } else if (auto* k = std::get_if<KnnConfig>(&config)) {
    read_if(j, "k", k->k);
  }
  return config;
}

TrainedModel fit_model(const ModelConfig& config, const Matrix& x, std::span<const int> y, std::size_t n_classes,
                       std::uint64_t seed) {
  if (const auto* c = std::get_if<CartConfig>(&config)) {
    return wrap(cart::fit_cart_classifier(x, y, n_classes, {}, c->tree, seed));
  }
  if (const auto* a = std::get_if<AdaBoostConfig>(&config)) {
    return wrap(ensembles::fit_adaboost(x, y, n_classes, a->params, seed));
  }
  if (const auto* g = std::get_if<GbmConfig>(&config)) return wrap(ensembles::fit_gbm(x, y, n_classes, g->params, seed));
  if (const auto* f = std::get_if<ForestConfig>(&config)) {
    return wrap(ensembles::fit_forest(x, y, n_classes, f->params, seed));
  }
  if (const auto* m = std::get_if<MlpConfig>(&config)) {
    std::vector<std::size_t> sizes{x.cols()};
    sizes.insert(sizes.end(), m->hidden.begin(), m->hidden.end());
    sizes.push_back(n_classes);
    auto init = learners::init_mlp(sizes, derive_seed(seed, "init"));
    return wrap(learners::train_mlp(std::move(init), x, y, m->train, derive_seed(seed, "train")).model);
  }
  const auto& k = std::get<KnnConfig>(config);
  return wrap(learners::fit_knn(x, y, n_classes, k.k));
}

TrainedModel base_model_from_json(const nlohmann::ordered_json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "cart") return wrap(cart::tree_from_json(j));
  if (kind == "adaboost") return wrap(ensembles::adaboost_from_json(j));
  if (kind == "gbm") return wrap(ensembles::gbm_from_json(j));
  if (kind == "forest") return wrap(ensembles::forest_from_json(j));
  if (kind == "mlp") return wrap(learners::mlp_from_json(j));
  if (kind == "knn") return wrap(learners::knn_from_json(j));
  throw ParseError("unknown model kind '" + kind + "'");
}

}  // namespace wxbench::models

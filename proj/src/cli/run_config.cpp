#include "wxbench/cli/run_config.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "wxbench/core/errors.hpp"
#include "wxbench/core/random.hpp"
#include "wxbench/core/text.hpp"

namespace wxbench::cli {
namespace {

struct Key {
  std::string name;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const std::string& expected) {
  throw InvalidArgument("config key '" + key + "': invalid value '" + value + "' (expected " + expected + ")");
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  if (!parse_double(v, out)) bad_value(key, v, "a number");
  return out;
}

long long to_int(const std::string& key, const std::string& v) {
  long long out = 0;
  if (!parse_int(v, out)) bad_value(key, v, "an integer");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  bad_value(key, v, "true or false");
}

std::vector<std::string> to_list(const std::string& v) {
  std::vector<std::string> out;
  for (const auto& item : split(v, ',')) {
    const auto t = trim(item);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& i : items) out += (out.empty() ? "" : ",") + i;
  return out;
}

template <typename T>
std::string join_numbers(const std::vector<T>& items) {
  std::string out;
  for (const auto& i : items) {
    if (!out.empty()) out += ',';
    if constexpr (std::is_floating_point_v<T>) {
      out += format_double(i);
    } else {
      out += std::to_string(i);
    }
  }
  return out;
}

// Tree parameter keys shared by cart, adaboost, gbm and forest.
void add_tree_keys(std::vector<Key>& keys, const std::string& prefix,
                   const std::function<cart::TreeParams&(RunConfig&)>& ref) {
  const auto depth = prefix + ".max_depth";
  const auto leaf = prefix + ".min_samples_leaf";
  keys.push_back({depth, [ref, depth](RunConfig& c, const std::string& v) { ref(c).max_depth = static_cast<int>(to_int(depth, v)); },
                  [ref](const RunConfig& c) { return std::to_string(ref(const_cast<RunConfig&>(c)).max_depth); }});
  keys.push_back({leaf, [ref, leaf](RunConfig& c, const std::string& v) { ref(c).min_samples_leaf = static_cast<int>(to_int(leaf, v)); },
                  [ref](const RunConfig& c) { return std::to_string(ref(const_cast<RunConfig&>(c)).min_samples_leaf); }});
}

const std::vector<Key>& keys() {
  static const std::vector<Key> table = [] {
    std::vector<Key> k;
    k.push_back({"latitude", [](RunConfig& c, const std::string& v) { c.latitude = to_double("latitude", v); },
                 [](const RunConfig& c) { return format_double(c.latitude); }});
    k.push_back({"longitude", [](RunConfig& c, const std::string& v) { c.longitude = to_double("longitude", v); },
                 [](const RunConfig& c) { return format_double(c.longitude); }});
    k.push_back({"start",
                 [](RunConfig& c, const std::string& v) {
                   const auto d = ingest::parse_date(v);
                   if (!d) bad_value("start", v, "YYYY-MM-DD");
                   c.start = *d;
                 },
                 [](const RunConfig& c) { return ingest::format_date(c.start); }});
    k.push_back({"end",
                 [](RunConfig& c, const std::string& v) {
                   const auto d = ingest::parse_date(v);
                   if (!d) bad_value("end", v, "YYYY-MM-DD");
                   c.end = *d;
                 },
                 [](const RunConfig& c) { return ingest::format_date(c.end); }});
    k.push_back({"cleaning",
                 [](RunConfig& c, const std::string& v) {
                   const auto p = ingest::cleaning_policy_from_string(v);
                   if (!p) bad_value("cleaning", v, "drop_row or linear_interpolate");
                   c.cleaning = *p;
                 },
                 [](const RunConfig& c) { return std::string(ingest::to_string(c.cleaning)); }});
    k.push_back({"target",
                 [](RunConfig& c, const std::string& v) {
                   const auto t = preprocess::target_from_string(v);
                   if (!t) bad_value("target", v, "precipitation or temperature");
                   c.target = *t;
                 },
                 [](const RunConfig& c) { return std::string(preprocess::to_string(c.target)); }});
    k.push_back({"precip.thresholds",
                 [](RunConfig& c, const std::string& v) {
                   c.precip_classes.thresholds.clear();
                   for (const auto& item : to_list(v)) c.precip_classes.thresholds.push_back(to_double("precip.thresholds", item));
                 },
                 [](const RunConfig& c) { return join_numbers(c.precip_classes.thresholds); }});
    k.push_back({"precip.names", [](RunConfig& c, const std::string& v) { c.precip_classes.names = to_list(v); },
                 [](const RunConfig& c) { return join(c.precip_classes.names); }});
    k.push_back({"temperature.classes",
                 [](RunConfig& c, const std::string& v) {
                   c.temperature_classes = static_cast<int>(to_int("temperature.classes", v));
                 },
                 [](const RunConfig& c) { return std::to_string(c.temperature_classes); }});
    k.push_back({"lag", [](RunConfig& c, const std::string& v) { c.lag = static_cast<int>(to_int("lag", v)); },
                 [](const RunConfig& c) { return std::to_string(c.lag); }});
    k.push_back({"test_fraction",
                 [](RunConfig& c, const std::string& v) { c.test_fraction = to_double("test_fraction", v); },
                 [](const RunConfig& c) { return format_double(c.test_fraction); }});
    k.push_back({"seed",
                 [](RunConfig& c, const std::string& v) {
                   const auto s = to_int("seed", v);
                   if (s < 0) bad_value("seed", v, "a non-negative integer");
                   c.seed = static_cast<std::uint64_t>(s);
                 },
                 [](const RunConfig& c) { return std::to_string(c.seed); }});

    add_tree_keys(k, "cart", [](RunConfig& c) -> cart::TreeParams& { return c.cart.tree; });

    k.push_back({"adaboost.rounds",
                 [](RunConfig& c, const std::string& v) {
                   c.adaboost.params.rounds = static_cast<int>(to_int("adaboost.rounds", v));
                 },
                 [](const RunConfig& c) { return std::to_string(c.adaboost.params.rounds); }});
    add_tree_keys(k, "adaboost", [](RunConfig& c) -> cart::TreeParams& { return c.adaboost.params.tree; });

    k.push_back({"gbm.rounds",
                 [](RunConfig& c, const std::string& v) { c.gbm.params.rounds = static_cast<int>(to_int("gbm.rounds", v)); },
                 [](const RunConfig& c) { return std::to_string(c.gbm.params.rounds); }});
    k.push_back({"gbm.learning_rate",
                 [](RunConfig& c, const std::string& v) { c.gbm.params.learning_rate = to_double("gbm.learning_rate", v); },
                 [](const RunConfig& c) { return format_double(c.gbm.params.learning_rate); }});
    add_tree_keys(k, "gbm", [](RunConfig& c) -> cart::TreeParams& { return c.gbm.params.tree; });

    k.push_back({"forest.n_trees",
                 [](RunConfig& c, const std::string& v) {
                   c.forest.params.n_trees = static_cast<int>(to_int("forest.n_trees", v));
                 },
                 [](const RunConfig& c) { return std::to_string(c.forest.params.n_trees); }});
    k.push_back({"forest.max_features",
                 [](RunConfig& c, const std::string& v) {
                   if (v == "sqrt") {
                     c.forest.params.max_features.reset();
                   } else {
                     const auto n = to_int("forest.max_features", v);
                     if (n < 1) bad_value("forest.max_features", v, "sqrt or a positive integer");
                     c.forest.params.max_features = static_cast<std::size_t>(n);
                   }
                 },
                 [](const RunConfig& c) {
                   return c.forest.params.max_features ? std::to_string(*c.forest.params.max_features) : std::string("sqrt");
                 }});
    k.push_back({"forest.bootstrap",
                 [](RunConfig& c, const std::string& v) { c.forest.params.bootstrap = to_bool("forest.bootstrap", v); },
                 [](const RunConfig& c) { return std::string(c.forest.params.bootstrap ? "true" : "false"); }});
    add_tree_keys(k, "forest", [](RunConfig& c) -> cart::TreeParams& { return c.forest.params.tree; });

    k.push_back({"mlp.hidden",
                 [](RunConfig& c, const std::string& v) {
                   c.mlp.hidden.clear();
                   for (const auto& item : to_list(v)) {
                     const auto n = to_int("mlp.hidden", item);
                     if (n < 1) bad_value("mlp.hidden", v, "positive layer widths");
                     c.mlp.hidden.push_back(static_cast<std::size_t>(n));
                   }
                 },
                 [](const RunConfig& c) { return join_numbers(c.mlp.hidden); }});
    k.push_back({"mlp.epochs",
                 [](RunConfig& c, const std::string& v) { c.mlp.train.epochs = static_cast<int>(to_int("mlp.epochs", v)); },
                 [](const RunConfig& c) { return std::to_string(c.mlp.train.epochs); }});
    k.push_back({"mlp.batch_size",
                 [](RunConfig& c, const std::string& v) {
                   const auto n = to_int("mlp.batch_size", v);
                   if (n < 1) bad_value("mlp.batch_size", v, "a positive integer");
                   c.mlp.train.batch_size = static_cast<std::size_t>(n);
                 },
                 [](const RunConfig& c) { return std::to_string(c.mlp.train.batch_size); }});
    k.push_back({"mlp.learning_rate",
                 [](RunConfig& c, const std::string& v) { c.mlp.train.learning_rate = to_double("mlp.learning_rate", v); },
                 [](const RunConfig& c) { return format_double(c.mlp.train.learning_rate); }});
    k.push_back({"mlp.momentum",
                 [](RunConfig& c, const std::string& v) { c.mlp.train.momentum = to_double("mlp.momentum", v); },
                 [](const RunConfig& c) { return format_double(c.mlp.train.momentum); }});
    k.push_back({"knn.k",
                 [](RunConfig& c, const std::string& v) {
                   const auto n = to_int("knn.k", v);
                   if (n < 1) bad_value("knn.k", v, "a positive integer");
                   c.knn.k = static_cast<std::size_t>(n);
                 },
                 [](const RunConfig& c) { return std::to_string(c.knn.k); }});

    k.push_back({"stacking.folds",
                 [](RunConfig& c, const std::string& v) {
                   const auto n = to_int("stacking.folds", v);
                   if (n < 2) bad_value("stacking.folds", v, "an integer >= 2");
                   c.stacking_folds = static_cast<std::size_t>(n);
                 },
                 [](const RunConfig& c) { return std::to_string(c.stacking_folds); }});
    k.push_back({"stacking.bases", [](RunConfig& c, const std::string& v) { c.stacking_bases = to_list(v); },
                 [](const RunConfig& c) { return join(c.stacking_bases); }});
    k.push_back({"stack_rf.bases", [](RunConfig& c, const std::string& v) { c.stack_rf_bases = to_list(v); },
                 [](const RunConfig& c) { return join(c.stack_rf_bases); }});
    k.push_back({"stack_nn.bases", [](RunConfig& c, const std::string& v) { c.stack_nn_bases = to_list(v); },
                 [](const RunConfig& c) { return join(c.stack_nn_bases); }});
    k.push_back({"stack_knn.bases", [](RunConfig& c, const std::string& v) { c.stack_knn_bases = to_list(v); },
                 [](const RunConfig& c) { return join(c.stack_knn_bases); }});

    k.push_back({"out", [](RunConfig& c, const std::string& v) { c.out_dir = v; },
                 [](const RunConfig& c) { return c.out_dir; }});
    k.push_back({"input", [](RunConfig& c, const std::string& v) { c.input = v; },
                 [](const RunConfig& c) { return c.input; }});
    k.push_back({"offline", [](RunConfig& c, const std::string& v) { c.offline = v; },
                 [](const RunConfig& c) { return c.offline; }});
    k.push_back({"power.base_url", [](RunConfig& c, const std::string& v) { c.power_base_url = v; },
                 [](const RunConfig& c) { return c.power_base_url; }});
    k.push_back({"power.attempts",
                 [](RunConfig& c, const std::string& v) { c.power_attempts = static_cast<int>(to_int("power.attempts", v)); },
                 [](const RunConfig& c) { return std::to_string(c.power_attempts); }});
    k.push_back({"power.backoff_ms",
                 [](RunConfig& c, const std::string& v) {
                   c.power_backoff_ms = static_cast<int>(to_int("power.backoff_ms", v));
                 },
                 [](const RunConfig& c) { return std::to_string(c.power_backoff_ms); }});
    return k;
  }();
  return table;
}

}  // namespace

preprocess::DiscretizationScheme RunConfig::scheme() const {
  if (target == preprocess::Target::precipitation) return precip_classes;
  return preprocess::TempQuantiles{temperature_classes};
}

std::string RunConfig::resolved_input() const { return input.empty() ? out_dir + "/power_clean.csv" : input; }

models::ModelConfig RunConfig::model(const std::string& kind) const {
  if (kind == "cart") return cart;
  if (kind == "adaboost") return adaboost;
  if (kind == "gbm") return gbm;
  if (kind == "forest") return forest;
  if (kind == "mlp") return mlp;
  if (kind == "knn") return knn;
  throw InvalidArgument("unknown model kind '" + kind + "'");
}

stacking::StackingSpec RunConfig::stacking_spec(const std::string& meta_kind) const {
  const std::vector<std::string>* bases = &stacking_bases;
  if (meta_kind == "forest" && !stack_rf_bases.empty()) bases = &stack_rf_bases;
  if (meta_kind == "mlp" && !stack_nn_bases.empty()) bases = &stack_nn_bases;
  if (meta_kind == "knn" && !stack_knn_bases.empty()) bases = &stack_knn_bases;
  stacking::StackingSpec spec;
  spec.base_learners.clear();
  for (const auto& b : *bases) spec.base_learners.push_back(model(b));
  spec.meta_learner = model(meta_kind);
  spec.n_folds = stacking_folds;
  spec.seed = derive_seed(seed, "stacking");
  return spec;
}

void set_config_value(RunConfig& config, const std::string& key, const std::string& value) {
  const auto& table = keys();
  const auto it = std::find_if(table.begin(), table.end(), [&](const Key& k) { return key == k.name; });
  if (it == table.end()) throw InvalidArgument("unknown config key '" + key + "'");
  it->set(config, value);
}

RunConfig parse_config(const std::string& text, RunConfig base) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const auto body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidArgument("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(body.substr(0, eq)));
    const std::string value(trim(body.substr(eq + 1)));
    try {
      set_config_value(base, key, value);
    } catch (const InvalidArgument& e) {
      throw InvalidArgument("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) { return parse_config(read_file(path), std::move(base)); }

std::string serialize_config(const RunConfig& config) {
  std::ostringstream out;
  for (const auto& k : keys()) out << k.name << " = " << k.get(config) << '\n';
  return out.str();
}

void validate_config(const RunConfig& c) {
  const auto fail = [](const std::string& msg) { throw InvalidArgument("invalid configuration: " + msg); };
  if (!(c.start < c.end)) fail("start must precede end");
  if (!(c.test_fraction > 0.0 && c.test_fraction < 1.0)) fail("test_fraction must be in (0, 1)");
  if (c.lag < 0) fail("lag must be >= 0");
  if (c.temperature_classes < 2) fail("temperature.classes must be >= 2");
  if (c.precip_classes.names.size() != c.precip_classes.thresholds.size() + 1) {
    fail("precip.names needs exactly one more entry than precip.thresholds");
  }
  if (!std::is_sorted(c.precip_classes.thresholds.begin(), c.precip_classes.thresholds.end()) ||
      std::adjacent_find(c.precip_classes.thresholds.begin(), c.precip_classes.thresholds.end()) !=
          c.precip_classes.thresholds.end()) {
    fail("precip.thresholds must be strictly increasing");
  }
  for (const auto* tree : {&c.cart.tree, &c.adaboost.params.tree, &c.gbm.params.tree, &c.forest.params.tree}) {
    if (tree->max_depth < 1) fail("tree max_depth must be >= 1");
    if (tree->min_samples_leaf < 1) fail("tree min_samples_leaf must be >= 1");
  }
  if (c.adaboost.params.rounds < 1) fail("adaboost.rounds must be >= 1");
  if (c.gbm.params.rounds < 1) fail("gbm.rounds must be >= 1");
  if (!(c.gbm.params.learning_rate > 0.0 && c.gbm.params.learning_rate <= 1.0)) fail("gbm.learning_rate must be in (0, 1]");
  if (c.forest.params.n_trees < 1) fail("forest.n_trees must be >= 1");
  if (c.mlp.hidden.empty()) fail("mlp.hidden needs at least one layer");
  if (c.mlp.train.epochs < 0) fail("mlp.epochs must be >= 0");
  if (!(c.mlp.train.learning_rate >= 0.0)) fail("mlp.learning_rate must be >= 0");
  if (c.stacking_folds < 2) fail("stacking.folds must be >= 2");
  if (c.power_attempts < 1) fail("power.attempts must be >= 1");
  if (c.power_backoff_ms < 0) fail("power.backoff_ms must be >= 0");
  for (const auto& meta : {"forest", "mlp", "knn"}) {
    const auto spec = c.stacking_spec(meta);
    stacking::validate_spec(spec);
  }
}

}  // namespace wxbench::cli

#include "wxbench/preprocess/dataset.hpp"

#include <map>
#include <string>

#include "wxbench/core/errors.hpp"

namespace wxbench::preprocess {

void validate_dataset(const LabeledDataset& ds, bool require_all_classes) {
  if (ds.features.rows() != ds.labels.size()) throw DataError("dataset: feature rows do not match label count");
  if (ds.features.cols() != ds.feature_names.size()) throw DataError("dataset: feature names do not match columns");
  std::vector<std::size_t> counts(ds.n_classes(), 0);
  for (int l : ds.labels) {
    if (l < 0 || static_cast<std::size_t>(l) >= ds.n_classes()) throw DataError("dataset: label out of range");
    ++counts[static_cast<std::size_t>(l)];
  }
  if (require_all_classes) {
    for (std::size_t k = 0; k < counts.size(); ++k) {
      if (counts[k] == 0) throw DataError("dataset: class '" + ds.class_names[k] + "' has no members");
    }
  }
}

SupervisedRows make_supervised(const ingest::WeatherTable& table, Target target, int lag) {
  if (lag < 0) throw InvalidArgument("lag must be >= 0");
  const auto selection = select_features(table, target);
  const auto target_col = table.column(target_feature(target));

  std::map<long long, std::size_t> by_day;
  for (std::size_t i = 0; i < table.size(); ++i) by_day.emplace(ingest::day_number(table[i].date), i);

  std::vector<std::size_t> rows;
  SupervisedRows out;
  out.feature_names = selection.names;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto it = by_day.find(ingest::day_number(table[i].date) + lag);
    if (it == by_day.end()) continue;
    rows.push_back(i);
    out.target.push_back(target_col[it->second]);
    out.dates.push_back(table[i].date);
  }
  out.features = selection.features.select_rows(rows);
  return out;
}

PreparedData prepare_dataset(const ingest::WeatherTable& table, const PrepareOptions& options) {
  const auto rows = make_supervised(table, options.target, options.lag);
  if (rows.target.size() < 2) throw DataError("not enough rows to build a dataset");

  PreparedData out;
  out.split = split_train_test(rows.target.size(), options.test_fraction, options.split_seed);
  const auto labels = discretize_target(rows.target, options.scheme, out.split.train_idx);
  out.binning = labels.binning;

  const Matrix train_raw = rows.features.select_rows(out.split.train_idx);
  const Matrix test_raw = rows.features.select_rows(out.split.test_idx);
  out.scaler = fit_minmax(train_raw);

  const auto make = [&](const Matrix& raw, const std::vector<std::size_t>& idx) {
    LabeledDataset ds;
    ds.features = apply_minmax(out.scaler, raw);
    for (auto i : idx) ds.labels.push_back(labels.labels[i]);
    ds.class_names = labels.class_names;
    ds.feature_names = rows.feature_names;
    ds.target_name = std::string(to_string(options.target));
    return ds;
  };
  out.train = make(train_raw, out.split.train_idx);
  out.test = make(test_raw, out.split.test_idx);
  validate_dataset(out.train, false);
  validate_dataset(out.test, false);
  return out;
}

}  // namespace wxbench::preprocess

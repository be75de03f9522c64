#include "wxbench/preprocess/target.hpp"

#include <algorithm>
#include <cmath>

#include "wxbench/core/errors.hpp"

namespace wxbench::preprocess {

int Binning::label_of(double v) const noexcept {
  const auto it = edge_goes_up ? std::upper_bound(edges.begin(), edges.end(), v)
                               : std::lower_bound(edges.begin(), edges.end(), v);
  return static_cast<int>(it - edges.begin());
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw InvalidArgument("quantile of empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

Binning fit_binning(const DiscretizationScheme& scheme, std::span<const double> fit_values) {
  if (const auto* p = std::get_if<PrecipClasses>(&scheme)) {
    if (p->names.size() != p->thresholds.size() + 1) {
      throw InvalidArgument("precipitation classes: need exactly one more name than thresholds");
    }
    if (!std::is_sorted(p->thresholds.begin(), p->thresholds.end()) ||
        std::adjacent_find(p->thresholds.begin(), p->thresholds.end()) != p->thresholds.end()) {
      throw InvalidArgument("precipitation classes: thresholds must be strictly increasing");
    }
    return Binning{.edges = p->thresholds, .class_names = p->names, .edge_goes_up = true};
  }
  const auto& t = std::get<TempQuantiles>(scheme);
  if (t.k < 2) throw InvalidArgument("quantile classes: K must be >= 2");
  if (fit_values.empty()) throw InvalidArgument("quantile classes: no values to fit edges on");
  std::vector<double> sorted(fit_values.begin(), fit_values.end());
  std::sort(sorted.begin(), sorted.end());
  Binning b;
  for (int j = 1; j < t.k; ++j) b.edges.push_back(quantile(sorted, static_cast<double>(j) / t.k));
  for (int j = 1; j <= t.k; ++j) b.class_names.push_back("q" + std::to_string(j));
  return b;
}

Labels apply_binning(const Binning& binning, std::span<const double> values) {
  Labels out;
  out.reserve(values.size());
  for (double v : values) out.push_back(binning.label_of(v));
  return out;
}

DiscretizedTarget discretize_target(std::span<const double> values, const DiscretizationScheme& scheme,
                                    std::span<const std::size_t> fit_rows) {
  if (values.empty()) throw InvalidArgument("discretize_target: no values");
  std::vector<double> fit_values;
  if (fit_rows.empty()) {
    fit_values.assign(values.begin(), values.end());
  } else {
    for (auto i : fit_rows) fit_values.push_back(values[i]);
  }
  DiscretizedTarget out;
  out.binning = fit_binning(scheme, fit_values);
  out.class_names = out.binning.class_names;
  out.labels = apply_binning(out.binning, values);

  std::vector<std::size_t> counts(out.binning.n_classes(), 0);
  for (int l : out.labels) ++counts[static_cast<std::size_t>(l)];
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) throw DataError("class '" + out.class_names[k] + "' has no members in the dataset");
  }
  return out;
}

}  // namespace wxbench::preprocess

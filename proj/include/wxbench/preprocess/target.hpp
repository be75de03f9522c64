/**
 * @file target.hpp
 * @brief Turning a continuous target (precipitation, temperature) into class labels.
 */
#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "wxbench/core/matrix.hpp"

namespace wxbench::preprocess {

/// Fixed rain-intensity bands in mm/day. A value equal to a threshold belongs
/// to the upper band: [0, 0.1) dry, [0.1, 10) light, [10, 35) moderate, [35, inf) heavy.
struct PrecipClasses {
  std::vector<double> thresholds{0.1, 10.0, 35.0};
  std::vector<std::string> names{"dry", "light", "moderate", "heavy"};
};

/// K classes split at empirical quantiles. A value equal to an edge belongs to
/// the lower bin.
struct TempQuantiles {
  int k{4};
};

using DiscretizationScheme = std::variant<PrecipClasses, TempQuantiles>;

struct Binning {
  std::vector<double> edges{};
  std::vector<std::string> class_names{};
  /// True when edge values go to the upper bin (fixed bands).
  bool edge_goes_up{false};

  [[nodiscard]] std::size_t n_classes() const noexcept { return class_names.size(); }
  [[nodiscard]] int label_of(double v) const noexcept;
};

/// Linear-interpolation quantile (position q*(n-1) in the sorted sample).
double quantile(std::vector<double> values, double q);

/// Bin edges for `scheme`, estimated from `fit_values` where the scheme is data driven.
Binning fit_binning(const DiscretizationScheme& scheme, std::span<const double> fit_values);

Labels apply_binning(const Binning& binning, std::span<const double> values);

struct DiscretizedTarget {
  Labels labels{};
  std::vector<std::string> class_names{};
  Binning binning{};
};

/// Labels every value, estimating data-driven edges from `values[fit_rows]`
/// only (all rows when `fit_rows` is empty). Throws DataError if any class ends
/// up with zero members across `values`.
DiscretizedTarget discretize_target(std::span<const double> values, const DiscretizationScheme& scheme,
                                    std::span<const std::size_t> fit_rows = {});

}  // namespace wxbench::preprocess

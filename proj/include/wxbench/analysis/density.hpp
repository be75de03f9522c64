#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace wxbench::analysis {

struct Histogram {
  int bins{30};
};
struct GaussianKde {
  int grid_points{256};
};
using DensityMethod = std::variant<Histogram, GaussianKde>;

struct DensityEstimate {
  /// Bin centres (histogram) or evaluation points (KDE).
  std::vector<double> grid{};
  std::vector<double> density{};
  /// Histogram bin width; 0 for KDE.
  double bin_width{0.0};
  /// KDE bandwidth; 0 for histograms.
  double bandwidth{0.0};
  /// "histogram" or "gaussian_kde".
  std::string method{};
  /// KDE was requested on a zero-variance sample and a histogram was returned.
  bool fell_back{false};
};

/// Silverman's rule: 1.06 * sample standard deviation * n^(-1/5).
double silverman_bandwidth(std::span<const double> values);

/// Histogram densities integrate to 1 over [min, max]; a sample with a single
/// repeated value gets a unit-wide range centred on it. The KDE is evaluated on
/// an even grid spanning [min - 3h, max + 3h]. Throws InvalidArgument with
/// fewer than 2 values or fewer than 1 bin.
DensityEstimate density_estimate(std::span<const double> values, const DensityMethod& method);

std::string density_csv(const DensityEstimate& est);

}  // namespace wxbench::analysis

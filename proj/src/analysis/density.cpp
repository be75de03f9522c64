#include "wxbench/analysis/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "wxbench/core/errors.hpp"
#include "wxbench/core/text.hpp"

namespace wxbench::analysis {
namespace {

double sample_stddev(std::span<const double> v) {
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (n - 1.0));
}

DensityEstimate histogram(std::span<const double> values, int bins) {
  auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  double lo = *lo_it, hi = *hi_it;
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double width = (hi - lo) / bins;
  std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
  for (double v : values) {
    auto b = static_cast<long long>(std::floor((v - lo) / width));
    b = std::clamp<long long>(b, 0, bins - 1);  // the maximum lands in the last bin
    counts[static_cast<std::size_t>(b)] += 1.0;
  }
  DensityEstimate out;
  out.method = "histogram";
  out.bin_width = width;
  const double norm = 1.0 / (static_cast<double>(values.size()) * width);
  for (int b = 0; b < bins; ++b) {
    out.grid.push_back(lo + (b + 0.5) * width);
    out.density.push_back(counts[static_cast<std::size_t>(b)] * norm);
  }
  return out;
}

}  // namespace

double silverman_bandwidth(std::span<const double> values) {
  if (values.size() < 2) throw InvalidArgument("silverman_bandwidth: need at least 2 values");
  return 1.06 * sample_stddev(values) * std::pow(static_cast<double>(values.size()), -0.2);
}

DensityEstimate density_estimate(std::span<const double> values, const DensityMethod& method) {
  if (values.size() < 2) throw InvalidArgument("density_estimate: need at least 2 values");
  if (const auto* h = std::get_if<Histogram>(&method)) {
    if (h->bins < 1) throw InvalidArgument("density_estimate: bins must be >= 1");
    return histogram(values, h->bins);
  }
  const auto& kde = std::get<GaussianKde>(method);
  if (kde.grid_points < 2) throw InvalidArgument("density_estimate: KDE grid needs >= 2 points");
  const double bw = silverman_bandwidth(values);
  if (!(bw > 0.0)) {
    auto out = histogram(values, 1);
    out.fell_back = true;
    return out;
  }
  auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it - 3.0 * bw;
  const double hi = *hi_it + 3.0 * bw;
  const double step = (hi - lo) / (kde.grid_points - 1);
  const double norm = 1.0 / (static_cast<double>(values.size()) * bw * std::sqrt(2.0 * std::numbers::pi));

  DensityEstimate out;
  out.method = "gaussian_kde";
  out.bandwidth = bw;
  for (int g = 0; g < kde.grid_points; ++g) {
    const double x = lo + g * step;
    double s = 0.0;
    for (double v : values) {
      const double u = (x - v) / bw;
      s += std::exp(-0.5 * u * u);
    }
    out.grid.push_back(x);
    out.density.push_back(s * norm);
  }
  return out;
}

std::string density_csv(const DensityEstimate& est) {
  std::ostringstream out;
  out << "grid,density\n";
  for (std::size_t i = 0; i < est.grid.size(); ++i) out << format_double(est.grid[i]) << ',' << format_double(est.density[i]) << '\n';
  return out.str();
}

}  // namespace wxbench::analysis

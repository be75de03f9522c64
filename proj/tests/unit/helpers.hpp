#pragma once

#include <string>
#include <vector>

#include "wxbench/core/matrix.hpp"
#include "wxbench/core/random.hpp"

namespace wxtest {

inline std::string fixture(const std::string& name) { return std::string(WXBENCH_FIXTURES) + "/" + name; }

inline wxbench::Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, double lo = 0.0,
                                     double hi = 1.0) {
  wxbench::Rng rng(seed);
  wxbench::Matrix m(rows, cols);
  for (auto& v : m.data()) v = rng.uniform(lo, hi);
  return m;
}

inline wxbench::Labels random_labels(std::size_t n, std::size_t k, std::uint64_t seed) {
  wxbench::Rng rng(seed);
  wxbench::Labels y(n);
  for (auto& v : y) v = static_cast<int>(rng.below(k));
  return y;
}

// Two Gaussian-ish blobs per class along a diagonal; K classes, D features.
inline void blobs(std::size_t n, std::size_t d, std::size_t k, std::uint64_t seed, wxbench::Matrix& x,
                  wxbench::Labels& y, double spread = 0.6) {
  wxbench::Rng rng(seed);
  x = wxbench::Matrix(n, d);
  y.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = static_cast<int>(i % k);
    y[i] = c;
    for (std::size_t j = 0; j < d; ++j) x(i, j) = 2.0 * c * (j % 2 == 0 ? 1.0 : -1.0) + spread * rng.normal();
  }
}

}  // namespace wxtest

#include "wxbench/preprocess/split.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wxbench/core/errors.hpp"
#include "wxbench/core/random.hpp"

namespace wxbench::preprocess {

SplitIndices split_train_test(std::size_t n, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw InvalidArgument("test_fraction must be in (0, 1)");
  if (n < 2) throw InvalidArgument("split_train_test: need at least 2 rows");
  const auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(n)));
  if (n_test == 0 || n_test == n) {
    throw InvalidArgument("split_train_test: test_fraction " + std::to_string(test_fraction) + " of " +
                          std::to_string(n) + " rows leaves an empty side");
  }
  Rng rng(seed);
  const auto perm = rng.permutation(n);
  SplitIndices out;
  out.seed = seed;
  out.test_idx.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_test));
  out.train_idx.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_test), perm.end());
  std::sort(out.test_idx.begin(), out.test_idx.end());
  std::sort(out.train_idx.begin(), out.train_idx.end());
  return out;
}

}  // namespace wxbench::preprocess

#pragma once

#include <cstdint>
#include <vector>

namespace wxbench::preprocess {

struct SplitIndices {
  std::vector<std::size_t> train_idx{};
  std::vector<std::size_t> test_idx{};
  std::uint64_t seed{};

  bool operator==(const SplitIndices&) const = default;
};

/// Seeded shuffle of [0, n) cut at round(test_fraction * n); both index lists
/// are returned sorted ascending. Throws InvalidArgument when either side
/// would be empty.
SplitIndices split_train_test(std::size_t n, double test_fraction, std::uint64_t seed);

}  // namespace wxbench::preprocess

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wxbench/core/matrix.hpp"

namespace wxbench::metrics {

/// counts(true, predicted), K x K.
class ConfusionMatrix {
 public:
  ConfusionMatrix() = default;
  ConfusionMatrix(std::size_t k, std::vector<std::string> class_names = {});

  [[nodiscard]] std::size_t n_classes() const noexcept { return k_; }
  [[nodiscard]] std::uint64_t operator()(std::size_t truth, std::size_t predicted) const noexcept {
    return counts_[truth * k_ + predicted];
  }
  std::uint64_t& operator()(std::size_t truth, std::size_t predicted) noexcept { return counts_[truth * k_ + predicted]; }

  [[nodiscard]] std::uint64_t total() const noexcept;
  [[nodiscard]] std::uint64_t trace() const noexcept;
  [[nodiscard]] std::uint64_t row_sum(std::size_t truth) const noexcept;
  [[nodiscard]] std::uint64_t col_sum(std::size_t predicted) const noexcept;
  [[nodiscard]] const std::vector<std::string>& class_names() const noexcept { return names_; }

  bool operator==(const ConfusionMatrix&) const = default;

 private:
  std::size_t k_{0};
  std::vector<std::uint64_t> counts_{};
  std::vector<std::string> names_{};
};

/// Throws InvalidArgument on length mismatch or a label outside [0, K).
ConfusionMatrix confusion_matrix(std::span<const int> y_true, std::span<const int> y_pred, std::size_t k,
                                 std::vector<std::string> class_names = {});

/// Grid with a `true\predicted` corner cell and class-name headers.
std::string confusion_csv(const ConfusionMatrix& cm);

struct ScoreReport {
  double accuracy{0.0};
  std::vector<double> precision{};
  std::vector<double> recall{};
  std::vector<double> f1{};
  std::vector<std::uint64_t> support{};
  double precision_macro{0.0};
  double recall_macro{0.0};
  double f1_macro{0.0};
  double precision_weighted{0.0};
  double recall_weighted{0.0};
  double f1_weighted{0.0};
};

/// accuracy = trace / total; precision_k = tp / column sum; recall_k = tp / row
/// sum; f1_k = 2 tp / (row sum + column sum), which equals 2PR/(P+R). Every
/// 0/0 is taken as 0. Macro is the plain mean over classes, weighted uses the
/// true-class support. Throws InvalidArgument when the matrix is empty.
ScoreReport classification_scores(const ConfusionMatrix& cm);

}  // namespace wxbench::metrics

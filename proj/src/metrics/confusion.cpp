#include "wxbench/metrics/confusion.hpp"

#include <numeric>
#include <sstream>

#include "wxbench/core/errors.hpp"

namespace wxbench::metrics {
namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ConfusionMatrix::ConfusionMatrix(std::size_t k, std::vector<std::string> class_names)
    : k_(k), counts_(k * k, 0), names_(std::move(class_names)) {
  if (names_.empty()) {
    for (std::size_t c = 0; c < k_; ++c) names_.push_back(std::to_string(c));
  }
  if (names_.size() != k_) throw InvalidArgument("confusion matrix: class name count does not match K");
}

std::uint64_t ConfusionMatrix::total() const noexcept { return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0}); }

std::uint64_t ConfusionMatrix::trace() const noexcept {
  std::uint64_t t = 0;
  for (std::size_t c = 0; c < k_; ++c) t += (*this)(c, c);
  return t;
}

std::uint64_t ConfusionMatrix::row_sum(std::size_t truth) const noexcept {
  std::uint64_t s = 0;
  for (std::size_t c = 0; c < k_; ++c) s += (*this)(truth, c);
  return s;
}

std::uint64_t ConfusionMatrix::col_sum(std::size_t predicted) const noexcept {
  std::uint64_t s = 0;
  for (std::size_t r = 0; r < k_; ++r) s += (*this)(r, predicted);
  return s;
}

ConfusionMatrix confusion_matrix(std::span<const int> y_true, std::span<const int> y_pred, std::size_t k,
                                 std::vector<std::string> class_names) {
  if (y_true.size() != y_pred.size()) throw InvalidArgument("confusion_matrix: length mismatch");
  ConfusionMatrix cm(k, std::move(class_names));
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const int t = y_true[i];
    const int p = y_pred[i];
    if (t < 0 || p < 0 || static_cast<std::size_t>(t) >= k || static_cast<std::size_t>(p) >= k) {
      throw InvalidArgument("confusion_matrix: label outside [0, " + std::to_string(k) + ") at position " +
                            std::to_string(i));
    }
    ++cm(static_cast<std::size_t>(t), static_cast<std::size_t>(p));
  }
  return cm;
}

std::string confusion_csv(const ConfusionMatrix& cm) {
  std::ostringstream out;
  out << "true\\predicted";
  for (const auto& n : cm.class_names()) out << ',' << n;
  out << '\n';
  for (std::size_t r = 0; r < cm.n_classes(); ++r) {
    out << cm.class_names()[r];
    for (std::size_t c = 0; c < cm.n_classes(); ++c) out << ',' << cm(r, c);
    out << '\n';
  }
  return out.str();
}

ScoreReport classification_scores(const ConfusionMatrix& cm) {
  const std::uint64_t total = cm.total();
  if (total == 0) throw InvalidArgument("classification_scores: empty confusion matrix");
  const std::size_t k = cm.n_classes();
  ScoreReport s;
  s.accuracy = ratio(cm.trace(), total);
  for (std::size_t c = 0; c < k; ++c) {
    const std::uint64_t tp = cm(c, c);
    const std::uint64_t row = cm.row_sum(c);
    const std::uint64_t col = cm.col_sum(c);
    s.precision.push_back(ratio(tp, col));
    s.recall.push_back(ratio(tp, row));
    s.f1.push_back(ratio(2 * tp, row + col));
    s.support.push_back(row);
  }
  const double kd = static_cast<double>(k);
  for (std::size_t c = 0; c < k; ++c) {
    s.precision_macro += s.precision[c] / kd;
    s.recall_macro += s.recall[c] / kd;
    s.f1_macro += s.f1[c] / kd;
    const double w = ratio(s.support[c], total);
    s.precision_weighted += w * s.precision[c];
    s.recall_weighted += w * s.recall[c];
    s.f1_weighted += w * s.f1[c];
  }
  return s;
}

}  // namespace wxbench::metrics

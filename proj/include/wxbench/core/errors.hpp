#pragma once

#include <stdexcept>
#include <string>

namespace wxbench {

// Each category maps onto one CLI exit code (see cli/commands.hpp).

/// Bad arguments or violated preconditions.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Transport failure or non-200 response from the data service.
class NetworkError : public std::runtime_error {
 public:
  NetworkError(const std::string& what, int status = 0, bool retriable = true)
      : std::runtime_error(what), status_(status), retriable_(retriable) {}
  [[nodiscard]] int status() const noexcept { return status_; }
  [[nodiscard]] bool retriable() const noexcept { return retriable_; }

 private:
  int status_;
  bool retriable_;
};

/// Malformed input text. Row/column are 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t row = 0, std::size_t column = 0)
      : std::runtime_error(what), row_(row), column_(column) {}
  [[nodiscard]] std::size_t row() const noexcept { return row_; }
  [[nodiscard]] std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

/// Data-quality failure (e.g. a feature with no observed values).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Training or inference failed for a model.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MissingInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wxbench

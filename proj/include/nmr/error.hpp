#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nmr {

/// Base class of everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A problem in KB source text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  enum class Kind { syntax, undeclared_symbol, arity_mismatch, variable_escape, invalid };

  ParseError(Kind kind, std::string message, std::size_t line = 0, std::size_t column = 0)
      : Error(format(message, line, column)),
        kind_(kind),
        detail_(std::move(message)),
        line_(line),
        column_(column) {}

  Kind kind() const { return kind_; }
  const std::string& detail() const { return detail_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column) {
    if (line == 0) return message;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
  }

  Kind kind_;
  std::string detail_;
  std::size_t line_;
  std::size_t column_;
};

/// A query that the selected consequence relation cannot evaluate.
class QueryError : public Error {
 public:
  using Error::Error;
};

/// An operation applied to a KB that lacks what it needs (unknown id, wrong semantics).
class AnalysisError : public Error {
 public:
  using Error::Error;
};

/// Completion refused because the preferred structure is not unique.
/// Each alternative is the exception set of one preferred structure.
class RefusalError : public Error {
 public:
  RefusalError(std::string message, std::vector<std::vector<std::string>> alternatives)
      : Error(std::move(message)), alternatives_(std::move(alternatives)) {}

  const std::vector<std::vector<std::string>>& alternatives() const { return alternatives_; }

 private:
  std::vector<std::vector<std::string>> alternatives_;
};

}  // namespace nmr

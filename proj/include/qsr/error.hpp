#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qsr {

/// Precondition violations on operation inputs.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A requested calculus/granularity/frame combination that an operation
/// does not support (e.g. table generation for a custom star frame).
class UnsupportedConfiguration : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text syntax error. Line and column are 1-based; line is 0 when the input
/// was a single token rather than a file.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error(Describe(line, column, what)),
        message_(what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  /// The diagnostic without the position prefix.
  const std::string& message() const { return message_; }

 private:
  static std::string Describe(std::size_t line, std::size_t column,
                              const std::string& what) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ", ";
    out += "column " + std::to_string(column) + ": " + what;
    return out;
  }

  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace qsr

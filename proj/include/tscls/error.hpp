#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tscls {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by the text front end; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

// Carries every problem found while validating a model, not just the first.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> problems)
      : Error(join(problems)), problems_(std::move(problems)) {}

  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  static std::string join(const std::vector<std::string>& problems) {
    std::string out;
    for (const auto& p : problems) {
      if (!out.empty()) out += "\n";
      out += p;
    }
    return out;
  }
  std::vector<std::string> problems_;
};

// Missing entry in a type environment.
class TypeError : public Error {
 public:
  using Error::Error;
};

// Rate expression could not be evaluated (division by zero, unknown name, ...).
class EvalError : public Error {
 public:
  using Error::Error;
};

// Substitution / matching misuse (unbound variable, ill-formed result).
class MatchError : public Error {
 public:
  using Error::Error;
};

}  // namespace tscls

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coraltda {

// Caller passed something outside an operation's domain (unknown vertex id,
// bad parameter, filter not covering the graph).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed token in a text input. `line()` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A multi-file dataset whose files disagree with each other or are missing.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A filtration or matrix that violates a structural invariant (e.g. a simplex
// whose face is missing or born later).
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace coraltda

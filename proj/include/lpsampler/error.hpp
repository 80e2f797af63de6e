#pragma once

#include <stdexcept>
#include <string>

namespace lps {

// An argument lies outside the domain an operation is defined or validated on.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative method exhausted its budget. Carries the last two estimates
// when the method produces a sequence of them (NaN otherwise).
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double previous, double last)
      : std::runtime_error(what), previous_(previous), last_(last) {}

  double previous() const noexcept { return previous_; }
  double last() const noexcept { return last_; }

 private:
  double previous_;
  double last_;
};

// Malformed input text; line() is 1-based (0 when no line applies).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line) : std::runtime_error(what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace lps

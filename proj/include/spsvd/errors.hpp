#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spsvd {

// Invalid caller-supplied argument: rank out of range, bad tolerance,
// mismatched dimensions, unknown statistic name, and the like.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input data that is structurally valid but unusable: all-zero weights,
// non-finite entries, covariance without distinct eigenvalues.
class DegenerateInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative solver hit its iteration cap before meeting its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, int iterations)
      : std::runtime_error(what), iterations_(iterations) {}
  int iterations() const { return iterations_; }

 private:
  int iterations_;
};

// A combinatorial search exceeded its evaluation budget. Carries the
// per-k infima computed so far so callers can report partial progress.
class BudgetExceededError : public std::runtime_error {
 public:
  BudgetExceededError(const std::string& what,
                      std::vector<std::pair<int, double>> partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const std::vector<std::pair<int, double>>& partial_infima() const {
    return partial_;
  }

 private:
  std::vector<std::pair<int, double>> partial_;
};

// Malformed text input; line is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace spsvd

#pragma once

#include <stdexcept>
#include <string>

namespace seshadri {

/// Malformed or out-of-range user input (negative degree, bad syntax, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was called on a system whose shape does not fit its contract.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A recursion rule cannot be applied to the given parameters.
class RuleInapplicable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A closed-form result was requested outside the hypotheses it is proven under.
class HypothesisViolated : public std::domain_error {
 public:
  HypothesisViolated(std::string inequality, const std::string& detail)
      : std::domain_error("hypothesis violated: " + inequality + " (" + detail + ")"),
        inequality_(std::move(inequality)) {}

  const std::string& inequality() const noexcept { return inequality_; }

 private:
  std::string inequality_;
};

class OutOfScope : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace seshadri

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace adwords {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Instance failed structural validation; carries every violation found.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// An earning would push some constraint above its budget.
class BudgetOverflow : public Error {
 public:
  using Error::Error;
};

/// A guarantee that should hold by construction was observed to fail.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// The potential-function algorithms assert that earning on all active
/// dimensions never overflows a budget.
class FeasibilityLemmaViolated : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class ZeroDenominator : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class NotAtTransition : public Error {
 public:
  using Error::Error;
};

/// Brute-force oracle asked to enumerate an instance beyond its hard limit.
class OracleLimitExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace adwords

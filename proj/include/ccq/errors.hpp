#pragma once

#include <stdexcept>
#include <string>

namespace ccq {

/// Input outside an operation's mathematical domain (zero polynomial, |a| < 2, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A precondition on structured input failed (reducible quadric, rank out of range, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration or search would exceed its configured budget. Never a partial answer.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& what, long long last_tried = -1)
      : std::runtime_error(what), last_tried_(last_tried) {}
  long long last_tried() const { return last_tried_; }

 private:
  long long last_tried_;
};

/// A structural proposition was falsified on a concrete instance.
class PropertyViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Missing or malformed configuration (constants file, flags).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Internal invariant broken; indicates a bug rather than bad input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ccq

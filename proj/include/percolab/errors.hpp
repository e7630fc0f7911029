#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace percolab {

/// Invalid input or an unsatisfiable request. The CLI maps these to exit code 2.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A broken internal guarantee. The CLI maps these to exit code 1.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public DomainError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DomainError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class InvalidGraph : public DomainError {
 public:
  using DomainError::DomainError;
};

class Disconnected : public DomainError {
 public:
  using DomainError::DomainError;
};

class TargetOutOfRange : public DomainError {
 public:
  using DomainError::DomainError;
};

class OutOfRange : public DomainError {
 public:
  using DomainError::DomainError;
};

class TooManyEdges : public DomainError {
 public:
  using DomainError::DomainError;
};

class EmptySample : public DomainError {
 public:
  using DomainError::DomainError;
};

class InvalidSet : public DomainError {
 public:
  using DomainError::DomainError;
};

class InvalidArgument : public DomainError {
 public:
  using DomainError::DomainError;
};

class ComponentTooSmall : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Raised when an exhaustive search would exceed its budget. Carries the best
/// upper bound found so far; it is not guaranteed to be the optimum.
class BudgetExceeded : public DomainError {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t best_upper_bound)
      : DomainError(what), best_upper_bound_(best_upper_bound) {}
  std::uint64_t best_upper_bound() const noexcept { return best_upper_bound_; }

 private:
  std::uint64_t best_upper_bound_;
};

class NonConvergence : public InternalError {
 public:
  using InternalError::InternalError;
};

class AttemptsCapReached : public InternalError {
 public:
  using InternalError::InternalError;
};

}  // namespace percolab

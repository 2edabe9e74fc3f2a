#pragma once

#include <stdexcept>
#include <string>

namespace ordrel {

/// Invalid parameters or an argument outside the domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class Tail { Left, Right };

/// A rate was requested where the governing probability vanishes:
/// hazard with sf(x) = 0 (right tail), reversed hazard with cdf(x) = 0 (left tail).
class TailError : public std::range_error {
 public:
  TailError(Tail tail, const std::string& what) : std::range_error(what), tail_(tail) {}
  Tail tail() const noexcept { return tail_; }

 private:
  Tail tail_;
};

/// A moment of the requested order does not exist (heavy tail).
class MomentUndefinedError : public DomainError {
 public:
  MomentUndefinedError(int order, double tail_exponent, const std::string& what)
      : DomainError(what), order_(order), tail_exponent_(tail_exponent) {}

  int order() const noexcept { return order_; }
  /// Moments of order k exist only when this exceeds k.
  double tail_exponent() const noexcept { return tail_exponent_; }

 private:
  int order_;
  double tail_exponent_;
};

/// Caller broke a documented precondition that can only be detected numerically
/// (e.g. a function passed to the Schur certifier is not symmetric).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// JSON input did not match the expected schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ordrel

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bnfkit {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in phase spaces of different dimension.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Polynomial has the wrong homogeneous structure for the operation.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Numeric argument outside its admissible range.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input violates a documented precondition (e.g. non-diagonal quadratic part).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Linearization has an eigenvalue off the imaginary axis.
class NotEllipticError : public Error {
 public:
  using Error::Error;
};

/// Repeated or vanishing normal frequencies.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// A divisor k·ω fell below the resonance guard. Carries the offending k.
class SmallDivisorError : public Error {
 public:
  SmallDivisorError(std::vector<int> k, double divisor, int degree);

  const std::vector<int>& k() const noexcept { return k_; }
  double divisor() const noexcept { return divisor_; }
  int degree() const noexcept { return degree_; }

 private:
  std::vector<int> k_;
  double divisor_;
  int degree_;
};

/// Implicit integrator step did not converge.
class StepFailureError : public Error {
 public:
  StepFailureError(double time, const std::string& what);
  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace bnfkit

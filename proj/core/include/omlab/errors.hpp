#pragma once

#include <stdexcept>
#include <string>

namespace omlab {

/// Base class for all omlab errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Shape mismatch between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input failed a construction-time validity check (e.g. Hermiticity tolerance).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Eigensolver did not converge; carries the remaining off-diagonal mass.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double off_diagonal_residual)
      : Error(what), off_diagonal_residual(off_diagonal_residual) {}
  double off_diagonal_residual;
};

/// An eigenvalue fell outside a scalar function's domain beyond the snap tolerance.
class DomainError : public Error {
 public:
  DomainError(const std::string& what, double eigenvalue)
      : Error(what), eigenvalue(eigenvalue) {}
  double eigenvalue;
};

/// A verifier's stated hypothesis does not hold for the given instance.
/// Distinct from a counterexample: the theorem is not being contradicted.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An integral representation is malformed (e.g. density fails its decay declaration).
class RepresentationError : public Error {
 public:
  using Error::Error;
};

/// The requested analytic continuation is not defined for this function.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Random instance generation exhausted its rejection budget.
class GenerationError : public Error {
 public:
  GenerationError(const std::string& what, int attempts, int accepted)
      : Error(what), attempts(attempts), accepted(accepted) {}
  int attempts;
  int accepted;
};

/// Invalid CLI / run configuration (maps to exit code 2).
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace omlab

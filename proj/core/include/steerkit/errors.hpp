#pragma once

#include <stdexcept>
#include <string>

namespace steerkit {

/// Base class for all steerkit domain errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A density matrix failed Hermiticity / unit-trace / positivity checks.
class InvalidState : public Error {
 public:
  using Error::Error;
};

/// A matrix does not have the two-qubit X sparsity pattern.
class NotXState : public Error {
 public:
  using Error::Error;
};

/// A numeric argument is outside its documented domain.
class ParameterOutOfRange : public Error {
 public:
  using Error::Error;
};

/// Full multiparty construction requested beyond the dense-matrix cap.
class NTooLarge : public Error {
 public:
  using Error::Error;
};

/// Scenario descriptor violates its own invariants (kind/n/alpha/mu).
class InvalidScenario : public Error {
 public:
  using Error::Error;
};

/// A square-root argument in the steering functional is negative beyond
/// tolerance; signals an invalid input state rather than a formula branch.
class NegativeRadicand : public Error {
 public:
  using Error::Error;
};

/// The analytic criterion requires |t_x| = |t_y|; the input violates it.
class TheoremPreconditionViolated : public Error {
 public:
  using Error::Error;
};

/// The requested operation does not support this measurement scheme.
class UnsupportedScheme : public Error {
 public:
  using Error::Error;
};

/// A threshold scan found more than one sign change; bisection would be
/// unsound, so the caller must handle the margin profile explicitly.
class NonMonotoneMargin : public Error {
 public:
  using Error::Error;
};

/// A measurement direction is not a unit vector within tolerance.
class InvalidDirection : public Error {
 public:
  using Error::Error;
};

/// The linear-program solver failed to converge to tolerance.
class SolverNumericalFailure : public Error {
 public:
  using Error::Error;
};

/// The requested sphere-net resolution is below the supported minimum.
class ResolutionTooLow : public Error {
 public:
  using Error::Error;
};

/// An explicit local-hidden-state construction was requested for a state
/// that violates the criterion, so no such model exists.
class StateIsSteerable : public Error {
 public:
  using Error::Error;
};

}  // namespace steerkit

#pragma once

#include <stdexcept>
#include <string>

namespace magnocool {

/// Propagation or linear-algebra failure (non-finite exponential, solver
/// breakdown). Carries whatever diagnostics the call site could attach.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Requested the stationary covariance of a non-Hurwitz drift.
struct NoSteadyState : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A sweep was asked for a crossing time no entry achieves.
struct TargetUnreachable : std::runtime_error {
  TargetUnreachable(const std::string& msg, double best)
      : std::runtime_error(msg), best_quotient(best) {}
  double best_quotient;
};

/// Integrator step size collapsed below the configured floor.
struct StiffnessError : NumericalError {
  using NumericalError::NumericalError;
};

/// An episode was cut short by invalid input or non-finite state.
struct EpisodeAborted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace magnocool

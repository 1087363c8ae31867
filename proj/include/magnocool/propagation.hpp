#pragma once

#include "magnocool/covariance.hpp"
#include "magnocool/generators.hpp"

namespace magnocool {

/// Exact one-interval update for a fixed generator over a step dt:
///   sigma' = F sigma F^T + Q,
/// with F = exp(A dt) and Q = int_0^dt exp(As) D exp(A^T s) ds from the
/// augmented block exponential exp([[A, D], [0, -A^T]] dt). Reusable when
/// the generator is held constant over many steps.
struct Propagator {
  Mat transition;  // F
  Mat noise;       // Q, symmetric PSD
  double dt = 0.0;
};

/// Throws NumericalError when the exponential produces non-finite entries
/// (diagnostics include the drift norm and step).
Propagator make_propagator(const GeneratorPair& gen, double dt);

CovarianceState apply(const Propagator& prop, const CovarianceState& state);

/// One-shot propagate over dt > 0 with the generator held fixed.
CovarianceState propagate(const CovarianceState& state, const GeneratorPair& gen,
                          double dt);

bool is_hurwitz(const Mat& drift);

/// Stationary covariance solving A sigma + sigma A^T + D = 0.
/// Throws NoSteadyState when the drift is not Hurwitz.
CovarianceState steady_state(const GeneratorPair& gen);

}  // namespace magnocool

#pragma once

#include "magnocool/system.hpp"
#include "magnocool/types.hpp"

namespace magnocool {

/// Drift A and diffusion D of the covariance flow
///   d(sigma)/dt = A sigma + sigma A^T + D.
/// D is symmetric positive semidefinite by construction.
struct GeneratorPair {
  Mat drift;
  Mat diffusion;
};

/// Compiles a system plus instantaneous control values into (A, D).
///
/// The Hamiltonian part enters as A_H = Omega M with H = (1/2) r^T M r in
/// the quadrature vector r; each bath contributes -kappa/2 on its mode's
/// diagonal block of A and kappa (n_bar + 1/2) I2 to D.
///
/// Throws std::invalid_argument for a wrong-length or non-finite control
/// vector, or a nonzero imaginary amplitude on a real coupling kind.
GeneratorPair build_generators(const SystemSpec& sys, const ControlVector& controls);

}  // namespace magnocool

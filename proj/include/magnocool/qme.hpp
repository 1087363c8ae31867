#pragma once

#include <vector>

#include "magnocool/covariance.hpp"
#include "magnocool/fock.hpp"
#include "magnocool/schedule.hpp"
#include "magnocool/system.hpp"

namespace magnocool {
namespace qme {

/// Full Hamiltonian on the truncated product space for the given
/// instantaneous controls. Hermitian by construction.
CMat build_hamiltonian(const SystemSpec& sys, const ControlVector& controls,
                       const FockOperators& ops);

/// Right-hand side of the master equation
///   d(rho)/dt = -i[H, rho]
///             + sum_j kappa_j (nbar_j + 1) Dis[c_j] rho
///             + sum_j kappa_j nbar_j Dis[c_j^dag] rho,
/// with Dis[c] rho = c rho c^dag - {c^dag c, rho}/2.
CMat lindblad_rhs(const CMat& rho, const CMat& h, const SystemSpec& sys,
                  const FockOperators& ops);

struct QmeOptions {
  double rtol = 1e-8;
  double atol = 1e-10;
  double h_init = 1e-3;
  double h_min = 1e-10;
  double reliability_threshold = 1e-4;  // top-Fock-level population bound
};

struct QmeSample {
  double time;
  CMat rho;
};

struct QmeTrajectory {
  std::vector<QmeSample> samples;  // at t = 0 and every schedule boundary
  double max_trace_drift = 0.0;    // max |Tr rho - 1| observed
  double max_top_level_population = 0.0;
  bool reliable = true;  // truncation diagnostic below threshold throughout
};

/// Adaptive Dormand-Prince integration of the master equation under a
/// piecewise-constant schedule, sampled at every interval boundary up to
/// t_end. Trace is not renormalized; its drift is reported. Throws
/// StiffnessError on step-size underflow.
QmeTrajectory evolve_qme(const CMat& rho0, const SystemSpec& sys,
                         const ControlSchedule& schedule, double t_end,
                         const FockOperators& ops, const QmeOptions& opts = {});

/// Second moments extracted from a density matrix by trace pairing:
/// quadrature covariance (with first moments subtracted), per-mode
/// occupancies, and the first-moment magnitudes as a diagnostic.
struct MomentSet {
  CovarianceState cov;
  Vec occupancies;
  Vec first_moments;  // (<x_1>, <p_1>, ...)
};

MomentSet moments_from_density(const CMat& rho, const SystemSpec& sys,
                               const FockOperators& ops);

}  // namespace qme
}  // namespace magnocool

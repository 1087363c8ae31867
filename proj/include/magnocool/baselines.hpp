#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "magnocool/system.hpp"
#include "magnocool/trace.hpp"
#include "magnocool/types.hpp"

namespace magnocool {
namespace baselines {

// Grid the schedules share with the control environment: one tenth of a
// reference-mode period per interval.
inline constexpr double kControlStepPeriods = 0.1;

struct SidebandEntry {
  double coupling = 0.0;       // constant |G|
  double min_quotient = 0.0;
  double time_to_min = 0.0;    // periods
  std::optional<double> time_to_target;  // periods
  bool diverged = false;       // integration stopped on runaway heating
  std::vector<std::pair<double, double>> curve;  // (t periods, quotient)
};

struct SidebandSweepResult {
  std::vector<SidebandEntry> entries;  // sorted by coupling
  double target_quotient = 0.0;
};

/// Constant-coupling cooling runs from the thermal state at the red
/// sideband, one entry per G. Non-cooling entries simply report
/// min_quotient >= ~1; dynamically unstable ones stop early and are
/// flagged.
SidebandSweepResult sideband_sweep(const SystemSpec& sys,
                                   const std::vector<double>& g_values,
                                   double horizon_periods,
                                   double target_quotient);

/// 15-per-decade logarithmic grid, the sweep's default resolution.
std::vector<double> log_grid(double lo, double hi, int per_decade = 15);

/// Fastest time-to-target over the sweep (periods). Throws
/// TargetUnreachable (carrying the best quotient achieved) when no entry
/// reaches the target.
double sideband_time_limit(const SidebandSweepResult& result,
                           double target_quotient);

/// pi * omega_m / (2 Omega_S Omega_P): the ideal-Raman transfer-time limit
/// of the far-detuned three-mode chain, units 1/omega_b. Sets *rwa_valid
/// (when given) to false outside omega_m >> sqrt(Omega_S^2 + Omega_P^2).
double raman_time_limit(double omega_m, double omega_s, double omega_p,
                        bool* rwa_valid = nullptr);

/// Effective two-mode reduction of the far-detuned chain:
///   Delta_eff = (Omega_P^2 - Omega_S^2) / (2 omega_m)
///   Omega_eff = Omega_S Omega_P / omega_m
std::pair<double, double> effective_two_mode(double omega_m, double omega_s,
                                             double omega_p);

/// Counter-intuitive Gaussian pulse pair: the Stokes (photon-side) pulse
/// precedes the pump (phonon-side) pulse, center_s < center_p.
struct GaussianPulsePair {
  double peak_s = 0.0;
  double peak_p = 0.0;
  double center_s = 0.0;  // units 1/omega_b
  double center_p = 0.0;
  double width = 1.0;     // shared Gaussian sigma, > 0
  double total_time = 0.0;

  double stokes_at(double t) const;
  double pump_at(double t) const;
  void validate() const;
};

/// Integrates the moment dynamics under the pulse pair sampled onto the
/// piecewise-constant control grid; returns the full occupancy trace.
EpisodeTrace stirap_run(const SystemSpec& sys, const GaussianPulsePair& pulses,
                        double horizon_periods);

struct StirapOptimizeOptions {
  int restarts = 20;
  int max_iterations = 400;
  double ftol = 1e-10;
  std::uint64_t seed = 12345;
};

struct StirapOptimizeResult {
  GaussianPulsePair pulses;
  double final_quotient = 0.0;
  bool converged = true;  // false: best-so-far returned with a warning flag
};

/// Direct-search optimization of the five pulse parameters (peaks bounded
/// by omega_max, ordering enforced structurally) minimizing the final
/// cooling quotient.
StirapOptimizeResult stirap_optimize(const SystemSpec& sys, double omega_max,
                                     double horizon_periods,
                                     const StirapOptimizeOptions& opts = {});

}  // namespace baselines
}  // namespace magnocool

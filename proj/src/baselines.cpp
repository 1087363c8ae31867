#include "magnocool/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "magnocool/covariance.hpp"
#include "magnocool/errors.hpp"
#include "magnocool/generators.hpp"
#include "magnocool/nelder_mead.hpp"
#include "magnocool/propagation.hpp"
#include "magnocool/schedule.hpp"

namespace magnocool {
namespace baselines {

std::vector<double> log_grid(double lo, double hi, int per_decade) {
  if (!(lo > 0.0) || !(hi > lo))
    throw std::invalid_argument("log_grid: need 0 < lo < hi");
  std::vector<double> out;
  const double step = 1.0 / per_decade;
  for (double e = std::log10(lo); e < std::log10(hi) + step / 2; e += step)
    out.push_back(std::pow(10.0, e));
  out.back() = std::min(out.back(), hi);
  return out;
}

SidebandSweepResult sideband_sweep(const SystemSpec& sys,
                                   const std::vector<double>& g_values,
                                   double horizon_periods,
                                   double target_quotient) {
  sys.validate();
  const int target = sys.target_mode;
  const double n_thermal =
      std::max(sys.modes[target].bath_occupancy, kOccupancyFloor);
  const double dt = periods_to_time(kControlStepPeriods);
  const int n_steps =
      static_cast<int>(std::ceil(horizon_periods / kControlStepPeriods));
  // Stop a runaway entry once it is this far above the thermal level.
  const double blowup = 1e12;

  SidebandSweepResult result;
  result.target_quotient = target_quotient;
  std::vector<double> gs = g_values;
  std::sort(gs.begin(), gs.end());

  for (double g : gs) {
    ControlVector controls(sys.n_control_slots);
    controls.setZero();
    controls(0) = Complex(g, 0.0);
    const Propagator prop = make_propagator(build_generators(sys, controls), dt);

    SidebandEntry entry;
    entry.coupling = g;
    CovarianceState state = thermal_covariance(sys);
    entry.min_quotient = cooling_quotient(state, target, n_thermal);
    entry.time_to_min = 0.0;
    entry.curve.push_back({0.0, entry.min_quotient});
    for (int k = 0; k < n_steps; ++k) {
      state = apply(prop, state);
      const double q = cooling_quotient(state, target, n_thermal);
      entry.curve.push_back({time_to_periods(state.time), q});
      if (q < entry.min_quotient) {
        entry.min_quotient = q;
        entry.time_to_min = time_to_periods(state.time);
      }
      if (!entry.time_to_target && q <= target_quotient)
        entry.time_to_target = time_to_periods(state.time);
      if (q > blowup) {
        entry.diverged = true;
        break;
      }
    }
    result.entries.push_back(std::move(entry));
  }
  return result;
}

double sideband_time_limit(const SidebandSweepResult& result,
                           double target_quotient) {
  double best_time = std::numeric_limits<double>::infinity();
  double best_quotient = std::numeric_limits<double>::infinity();
  for (const auto& entry : result.entries) {
    best_quotient = std::min(best_quotient, entry.min_quotient);
    for (const auto& [t, q] : entry.curve) {
      if (q <= target_quotient) {
        best_time = std::min(best_time, t);
        break;
      }
    }
  }
  if (!std::isfinite(best_time))
    throw TargetUnreachable("sideband_time_limit: no sweep entry reaches the "
                            "target quotient (best achieved: " +
                                std::to_string(best_quotient) + ")",
                            best_quotient);
  return best_time;
}

double raman_time_limit(double omega_m, double omega_s, double omega_p,
                        bool* rwa_valid) {
  if (!(omega_s > 0.0) || !(omega_p > 0.0))
    throw std::invalid_argument("raman_time_limit: couplings must be positive");
  if (!(omega_m > 0.0))
    throw std::invalid_argument("raman_time_limit: omega_m must be positive");
  if (rwa_valid)
    *rwa_valid = omega_m > 10.0 * std::hypot(omega_s, omega_p);
  return M_PI * omega_m / (2.0 * omega_s * omega_p);
}

std::pair<double, double> effective_two_mode(double omega_m, double omega_s,
                                             double omega_p) {
  if (!(omega_m > 0.0))
    throw std::invalid_argument("effective_two_mode: omega_m must be positive");
  return {(omega_p * omega_p - omega_s * omega_s) / (2.0 * omega_m),
          omega_s * omega_p / omega_m};
}

double GaussianPulsePair::stokes_at(double t) const {
  const double u = (t - center_s) / width;
  return peak_s * std::exp(-0.5 * u * u);
}

double GaussianPulsePair::pump_at(double t) const {
  const double u = (t - center_p) / width;
  return peak_p * std::exp(-0.5 * u * u);
}

void GaussianPulsePair::validate() const {
  if (peak_s < 0.0 || peak_p < 0.0)
    throw std::invalid_argument("GaussianPulsePair: peaks must be >= 0");
  if (!(width > 0.0))
    throw std::invalid_argument("GaussianPulsePair: width must be > 0");
  if (!(center_s < center_p))
    throw std::invalid_argument(
        "GaussianPulsePair: counter-intuitive ordering requires center_s < center_p");
}

EpisodeTrace stirap_run(const SystemSpec& sys, const GaussianPulsePair& pulses,
                        double horizon_periods) {
  sys.validate();
  pulses.validate();
  if (sys.n_control_slots != 2)
    throw std::invalid_argument("stirap_run: expected a two-slot (tripartite) system");

  const double dt = periods_to_time(kControlStepPeriods);
  const int n_steps =
      static_cast<int>(std::ceil(horizon_periods / kControlStepPeriods));
  const auto schedule = ControlSchedule::sample(
      [&](double t) {
        CVec u(2);
        u(0) = Complex(pulses.stokes_at(t), 0.0);
        u(1) = Complex(pulses.pump_at(t), 0.0);
        return u;
      },
      2, dt, n_steps);

  const int target = sys.target_mode;
  const double n_thermal =
      std::max(sys.modes[target].bath_occupancy, kOccupancyFloor);

  EpisodeTrace trace;
  trace.target_mode = target;
  trace.n_thermal = n_thermal;
  CovarianceState state = thermal_covariance(sys);
  for (int k = 0; k < n_steps; ++k) {
    const ControlVector u = schedule.at_step(k);
    state = propagate(state, build_generators(sys, u), dt);
    EpisodeStep step;
    step.time = state.time;
    step.controls = u;
    step.occupancies.resize(sys.n_modes());
    for (int j = 0; j < sys.n_modes(); ++j)
      step.occupancies(j) = occupancy(state, j);
    step.reward = n_thermal / std::max(step.occupancies(target), kOccupancyFloor);
    trace.steps.push_back(std::move(step));
  }
  trace.refresh_aggregates();
  return trace;
}

namespace {

double sigmoid(double u) { return 1.0 / (1.0 + std::exp(-u)); }

// Unconstrained 5-vector -> bounded pulse parameters with the ordering
// center_s < center_p built in.
GaussianPulsePair decode_pulses(const Vec& u, double omega_max, double total_time) {
  GaussianPulsePair p;
  p.peak_s = omega_max * sigmoid(u(0));
  p.peak_p = omega_max * sigmoid(u(1));
  p.center_s = total_time * 0.8 * sigmoid(u(2));
  p.center_p = p.center_s + (total_time - p.center_s) * std::max(sigmoid(u(3)), 1e-6);
  p.width = total_time * (0.02 + 0.38 * sigmoid(u(4)));
  p.total_time = total_time;
  return p;
}

}  // namespace

StirapOptimizeResult stirap_optimize(const SystemSpec& sys, double omega_max,
                                     double horizon_periods,
                                     const StirapOptimizeOptions& opts) {
  if (!(omega_max > 0.0))
    throw std::invalid_argument("stirap_optimize: omega_max must be positive");
  const double total_time = periods_to_time(horizon_periods);

  auto objective = [&](const Vec& u) {
    const GaussianPulsePair pulses = decode_pulses(u, omega_max, total_time);
    try {
      const EpisodeTrace trace = stirap_run(sys, pulses, horizon_periods);
      return trace.quotient_at(trace.n_steps() - 1);
    } catch (const NumericalError&) {
      return 1e30;  // runaway heating; steer the simplex away
    }
  };

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> start(0.0, 1.5);

  StirapOptimizeResult best;
  double best_value = std::numeric_limits<double>::infinity();
  bool best_converged = false;
  for (int r = 0; r < opts.restarts; ++r) {
    Vec u0(5);
    for (int i = 0; i < 5; ++i) u0(i) = start(rng);
    const NelderMeadResult nm =
        nelder_mead(objective, u0, 0.7, opts.ftol, opts.max_iterations);
    if (nm.value < best_value) {
      best_value = nm.value;
      best.pulses = decode_pulses(nm.x, omega_max, total_time);
      best_converged = nm.converged;
    }
  }
  best.final_quotient = best_value;
  best.converged = best_converged;
  best.pulses.validate();  // ordering holds for every optimizer output
  return best;
}

}  // namespace baselines
}  // namespace magnocool

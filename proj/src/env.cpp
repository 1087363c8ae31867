#include "magnocool/env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "magnocool/errors.hpp"
#include "magnocool/generators.hpp"
#include "magnocool/propagation.hpp"

namespace magnocool {
namespace rl {

int EnvConfig::action_dim() const {
  int n = 0;
  for (const auto& ch : channels) n += ch.n_actions();
  return n;
}

int EnvConfig::observation_dim() const {
  const int d = system.dim();
  return d * (d + 1) / 2 + action_dim();
}

void EnvConfig::validate() const {
  system.validate();
  if (steps_per_episode < 1)
    throw std::invalid_argument("EnvConfig: steps_per_episode must be >= 1");
  if (!(dt > 0.0)) throw std::invalid_argument("EnvConfig: dt must be > 0");
  if (channels.empty())
    throw std::invalid_argument("EnvConfig: no action channels");
  std::vector<bool> covered(system.n_control_slots, false);
  for (const auto& ch : channels) {
    if (ch.slot < 0 || ch.slot >= system.n_control_slots)
      throw std::invalid_argument("EnvConfig: channel slot out of range");
    if (!(ch.scale > 0.0))
      throw std::invalid_argument("EnvConfig: channel scale must be > 0");
    if (covered[ch.slot])
      throw std::invalid_argument("EnvConfig: duplicate channel for one slot");
    covered[ch.slot] = true;
  }
  for (bool c : covered)
    if (!c) throw std::invalid_argument("EnvConfig: uncontrolled slot");
  if (!(reward.n_thermal > 0.0))
    throw std::invalid_argument("EnvConfig: reward n_thermal must be > 0");
  if (reward.lambda < 0.0)
    throw std::invalid_argument("EnvConfig: reward lambda must be >= 0");
  if (reward.kind == RewardSpec::Kind::InverseQuotientMinusMagnon &&
      (reward.penalized_mode < 0 || reward.penalized_mode >= system.n_modes()))
    throw std::invalid_argument("EnvConfig: penalized mode out of range");
  if (!(observation_scale > 0.0))
    throw std::invalid_argument("EnvConfig: observation_scale must be > 0");
}

EnvConfig bipartite_env_config(const SystemSpec& sys, double g_max,
                               double n_thermal, int steps_per_episode) {
  EnvConfig cfg;
  cfg.system = sys;
  cfg.steps_per_episode = steps_per_episode;
  cfg.dt = periods_to_time(0.1);
  cfg.channels = {{ActionChannel::Kind::ComplexAmplitude, 0, g_max}};
  cfg.reward.kind = RewardSpec::Kind::InverseQuotient;
  cfg.reward.n_thermal = n_thermal;
  cfg.observation_scale = n_thermal;
  cfg.validate();
  return cfg;
}

EnvConfig tripartite_env_config(const SystemSpec& sys, double omega_s_max,
                                double omega_p_max, double n_thermal,
                                double lambda, int steps_per_episode) {
  EnvConfig cfg;
  cfg.system = sys;
  cfg.steps_per_episode = steps_per_episode;
  cfg.dt = periods_to_time(0.1);
  cfg.channels = {{ActionChannel::Kind::NonNegativeAmplitude, 0, omega_s_max},
                  {ActionChannel::Kind::NonNegativeAmplitude, 1, omega_p_max}};
  cfg.reward.kind = RewardSpec::Kind::InverseQuotientMinusMagnon;
  cfg.reward.lambda = lambda;
  cfg.reward.n_thermal = n_thermal;
  cfg.reward.penalized_mode = sys.mode_index("magnon");
  cfg.observation_scale = n_thermal;
  cfg.validate();
  return cfg;
}

double compute_reward(const RewardSpec& reward, const CovarianceState& state,
                      int target_mode) {
  const double quotient =
      cooling_quotient(state, target_mode, reward.n_thermal, kOccupancyFloor);
  double r = 1.0 / quotient;
  if (reward.kind == RewardSpec::Kind::InverseQuotientMinusMagnon)
    r -= reward.lambda * occupancy(state, reward.penalized_mode);
  return r;
}

Environment::Environment(EnvConfig config) : cfg_(std::move(config)) {
  cfg_.validate();
  reset();
}

Vec Environment::reset() {
  state_ = thermal_covariance(cfg_.system);
  controls_ = ControlVector::Zero(cfg_.system.n_control_slots);
  step_count_ = 0;
  trace_ = EpisodeTrace{};
  trace_.target_mode = cfg_.system.target_mode;
  trace_.n_thermal = cfg_.reward.n_thermal;
  return observe();
}

ControlVector Environment::action_to_controls(const Vec& action) const {
  if (action.size() != cfg_.action_dim())
    throw std::invalid_argument("Environment: action length mismatch");
  ControlVector controls = ControlVector::Zero(cfg_.system.n_control_slots);
  int k = 0;
  for (const auto& ch : cfg_.channels) {
    if (ch.kind == ActionChannel::Kind::ComplexAmplitude) {
      controls(ch.slot) =
          Complex(action(k), action(k + 1)) * (ch.scale / std::sqrt(2.0));
      k += 2;
    } else {
      controls(ch.slot) = Complex((action(k) + 1.0) * 0.5 * ch.scale, 0.0);
      k += 1;
    }
  }
  return controls;
}

Vec Environment::observe() const {
  const int d = cfg_.system.dim();
  Vec obs(cfg_.observation_dim());
  int k = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j)
      obs(k++) = state_.sigma(i, j) / cfg_.observation_scale;
  for (const auto& ch : cfg_.channels) {
    const Complex u = controls_(ch.slot);
    if (ch.kind == ActionChannel::Kind::ComplexAmplitude) {
      const double s = ch.scale / std::sqrt(2.0);
      obs(k++) = u.real() / s;
      obs(k++) = u.imag() / s;
    } else {
      obs(k++) = u.real() / ch.scale;
    }
  }
  return obs;
}

Environment::StepResult Environment::step(const Vec& action) {
  if (step_count_ >= cfg_.steps_per_episode)
    throw std::logic_error("Environment: step() after episode end; call reset()");
  if (!action.allFinite())
    throw EpisodeAborted("Environment: non-finite action at step " +
                         std::to_string(step_count_));

  Vec clipped = action;
  for (Eigen::Index i = 0; i < clipped.size(); ++i) {
    const double c = std::clamp(clipped(i), -1.0, 1.0);
    if (c != clipped(i)) ++clip_count_;
    clipped(i) = c;
  }

  controls_ = action_to_controls(clipped);
  state_ = propagate(state_, build_generators(cfg_.system, controls_), cfg_.dt);
  ++step_count_;

  StepResult res;
  res.reward = compute_reward(cfg_.reward, state_, cfg_.system.target_mode);
  res.observation = observe();
  res.done = step_count_ >= cfg_.steps_per_episode;
  if (!res.observation.allFinite())
    throw EpisodeAborted("Environment: non-finite observation at step " +
                         std::to_string(step_count_));

  EpisodeStep rec;
  rec.time = state_.time;
  rec.action = clipped;
  rec.controls = controls_;
  rec.occupancies.resize(cfg_.system.n_modes());
  for (int j = 0; j < cfg_.system.n_modes(); ++j)
    rec.occupancies(j) = occupancy(state_, j);
  rec.reward = res.reward;
  trace_.steps.push_back(std::move(rec));
  if (res.done) trace_.refresh_aggregates();
  return res;
}

}  // namespace rl
}  // namespace magnocool

#pragma once

#include <cstdint>
#include <vector>

#include "magnocool/covariance.hpp"
#include "magnocool/system.hpp"
#include "magnocool/trace.hpp"

namespace magnocool {
namespace rl {

struct RewardSpec {
  enum class Kind {
    InverseQuotient,             // n_T / <b^dag b>
    InverseQuotientMinusMagnon,  // n_T / <b^dag b> - lambda <m^dag m>
  };
  Kind kind = Kind::InverseQuotient;
  double lambda = 0.0;
  double n_thermal = 100.0;
  int penalized_mode = -1;  // the magnon index for the penalized variant
};

/// How a policy's canonical [-1, 1] actions become control-slot values.
struct ActionChannel {
  enum class Kind {
    ComplexAmplitude,      // (a1 + i a2) * scale / sqrt(2); |value| <= scale
    NonNegativeAmplitude,  // (a + 1)/2 * scale in [0, scale]
  };
  Kind kind = Kind::ComplexAmplitude;
  int slot = 0;
  double scale = 1.0;

  int n_actions() const { return kind == Kind::ComplexAmplitude ? 2 : 1; }
};

struct EnvConfig {
  SystemSpec system;
  int steps_per_episode = 50;
  double dt = 0.0;  // control hold time, units 1/omega_b
  std::vector<ActionChannel> channels;
  RewardSpec reward;
  double observation_scale = 100.0;  // moment entries divided by this (n_T)
  std::uint64_t seed = 0;

  int action_dim() const;
  int observation_dim() const;
  void validate() const;
};

/// Bipartite cooling environment: one complex control slot, two actions,
/// 50 steps of a tenth of a period each. g_max bounds |G|.
EnvConfig bipartite_env_config(const SystemSpec& sys, double g_max,
                               double n_thermal, int steps_per_episode = 50);

/// Tripartite cooling environment: two non-negative control slots, reward
/// penalizes the magnon population with weight lambda, 150 steps.
EnvConfig tripartite_env_config(const SystemSpec& sys, double omega_s_max,
                                double omega_p_max, double n_thermal,
                                double lambda, int steps_per_episode = 150);

double compute_reward(const RewardSpec& reward, const CovarianceState& state,
                      int target_mode);

/// Episodic wrapper around the moment simulator. Stateful and
/// single-threaded; independent instances may run in parallel.
class Environment {
 public:
  explicit Environment(EnvConfig config);

  Vec reset();

  struct StepResult {
    Vec observation;
    double reward = 0.0;
    bool done = false;
  };

  /// Clips the action into its bounds (counting clips), holds the mapped
  /// controls for dt, propagates, and rewards the post-step state. Throws
  /// EpisodeAborted on a non-finite action.
  StepResult step(const Vec& action);

  ControlVector action_to_controls(const Vec& action) const;

  const EnvConfig& config() const { return cfg_; }
  const CovarianceState& state() const { return state_; }
  const EpisodeTrace& trace() const { return trace_; }
  int observation_dim() const { return cfg_.observation_dim(); }
  int action_dim() const { return cfg_.action_dim(); }
  long clip_count() const { return clip_count_; }
  int step_count() const { return step_count_; }

 private:
  Vec observe() const;

  EnvConfig cfg_;
  CovarianceState state_;
  ControlVector controls_;
  int step_count_ = 0;
  long clip_count_ = 0;
  EpisodeTrace trace_;
};

}  // namespace rl
}  // namespace magnocool

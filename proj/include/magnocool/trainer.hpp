#pragma once

#include <functional>
#include <string>
#include <vector>

#include "magnocool/checkpoint.hpp"
#include "magnocool/env.hpp"
#include "magnocool/sac.hpp"

namespace magnocool {
namespace rl {

struct TrainOptions {
  long episodes = 10000;
  long warmup_steps = 1000;  // uniform-random action steps before updates
  int update_every = 1;      // env steps per gradient update
  int eval_interval = 50;    // episodes between deterministic evaluations
  int eval_episodes = 3;
  // Exploration noise layer annealed linearly across the episode budget.
  double noise_std_initial = 0.0;
  double noise_std_final = 0.0;
};

struct CurvePoint {
  long episode = 0;
  double net_reward = 0.0;   // summed over the episode
  double mean_reward = 0.0;  // per step
  double mean_quotient = 0.0;
  double eval_score = std::numeric_limits<double>::quiet_NaN();
  double alpha = 0.0;
  double q1_loss = std::numeric_limits<double>::quiet_NaN();
  double q2_loss = std::numeric_limits<double>::quiet_NaN();
  double actor_loss = std::numeric_limits<double>::quiet_NaN();
};

struct TrainResult {
  std::vector<CurvePoint> curve;
  std::vector<std::uint8_t> best_checkpoint;
  long best_episode = -1;
  double best_eval_score = -std::numeric_limits<double>::infinity();
  bool diverged = false;
  std::string divergence_reason;
  long total_env_steps = 0;
  long total_updates = 0;
};

/// Mean net reward over `episodes` deterministic rollouts (the periodic
/// evaluation used for best-model selection).
double evaluate_policy(Environment& env, SacAgent& agent, int episodes);

/// Alternates rollout and update steps; periodic deterministic evaluation
/// selects the best checkpoint. On divergence (non-finite loss or an
/// aborted episode) halts with the last good checkpoint and the flag set.
TrainResult train(Environment& env, SacAgent& agent, const TrainOptions& opts,
                  const std::string& env_hash,
                  const std::function<void(const CurvePoint&)>& on_episode = {});

}  // namespace rl
}  // namespace magnocool

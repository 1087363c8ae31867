#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "magnocool/mlp.hpp"
#include "magnocool/replay_buffer.hpp"
#include "magnocool/types.hpp"

namespace magnocool {
namespace rl {

struct SacConfig {
  std::vector<int> hidden = {512, 256, 256, 128};
  double lr = 1e-4;
  long buffer_capacity = 1000000;
  int batch_size = 512;
  double gamma = 0.99;
  double tau = 0.005;
  double alpha_init = 0.1;
  bool adaptive_alpha = true;
  // Default target entropy is -action_dim; NaN selects the default.
  double target_entropy = std::numeric_limits<double>::quiet_NaN();
  double grad_clip = 10.0;
  double log_std_min = -20.0;
  double log_std_max = 2.0;
  // Zero-mean Gaussian perturbation on the pre-squash output (exploration
  // layer for the tripartite actor); 0 disables.
  double noise_std = 0.0;
};

/// One reparameterized draw from the squashed-Gaussian policy, batched,
/// with everything needed to backpropagate through it.
struct PolicySample {
  Mlp::Cache cache;
  Mat mu, log_std, sigma, std_eff, eps, pre_squash, actions;  // k x batch
  Mat clamp_interior;  // 1 where log_std was inside its clamp bounds
  Vec log_prob;        // per sample
};

/// rng == nullptr gives the deterministic action tanh(mu) (log_prob of the
/// mean draw). With an rng, a = tanh(mu + std_eff * eps) where std_eff
/// folds the exploration noise layer into the Gaussian:
/// std_eff = sqrt(sigma^2 + noise_std^2).
PolicySample policy_sample(const Mlp& net, const Mat& obs, const SacConfig& cfg,
                           std::mt19937_64* rng);

/// Soft actor-critic learner: squashed-Gaussian policy, twin critics with
/// Polyak-averaged targets, adaptive entropy temperature, in-repo
/// backprop/Adam. Owns the run's RNG; every stochastic draw flows from it.
class SacAgent {
 public:
  SacAgent(int obs_dim, int action_dim, SacConfig cfg, std::uint64_t seed);

  int obs_dim() const { return obs_dim_; }
  int action_dim() const { return action_dim_; }
  const SacConfig& config() const { return cfg_; }
  double alpha() const { return std::exp(log_alpha_); }
  double target_entropy() const { return target_entropy_; }

  /// Single-observation action; stochastic draws consume the agent RNG.
  std::pair<Vec, double> sample_action(const Vec& obs, bool deterministic);
  Vec uniform_random_action();  // warmup exploration

  /// Entropy-regularized twin-min bootstrap target
  ///   y = r + gamma (1 - done) (min_j Q_tj(s', a') - alpha log pi(a'|s'))
  /// for a fresh policy draw `next` at s'.
  static Vec critic_target(const Batch& batch, const PolicySample& next,
                           const Mlp& q_target_a, const Mlp& q_target_b,
                           double gamma, double alpha);

  struct UpdateStats {
    double q1_loss = 0.0;
    double q2_loss = 0.0;
    double actor_loss = 0.0;
    double alpha = 0.0;
    double mean_log_prob = 0.0;
  };

  /// One full SAC update on a sampled batch: both critic regressions, one
  /// actor step, the temperature step, then target Polyak averaging.
  UpdateStats update(const Batch& batch);

  std::pair<double, double> update_critics(const Batch& batch);
  double update_actor(const Batch& batch, double* mean_log_prob = nullptr);
  double update_alpha(double mean_log_prob);
  void soft_update_targets();

  // Exposed for checkpointing and tests.
  Mlp policy, q1, q2, q1_target, q2_target;
  AdamOptimizer opt_policy, opt_q1, opt_q2;
  double log_alpha_ = 0.0;
  double alpha_m_ = 0.0, alpha_v_ = 0.0;  // Adam moments for log alpha
  long alpha_step_ = 0;

  std::mt19937_64& rng() { return rng_; }
  const std::mt19937_64& rng() const { return rng_; }
  void set_noise_std(double s) { cfg_.noise_std = s; }

 private:
  Mat critic_input(const Mat& s, const Mat& a) const;

  int obs_dim_, action_dim_;
  SacConfig cfg_;
  double target_entropy_;
  std::mt19937_64 rng_;
};

}  // namespace rl
}  // namespace magnocool

#include "magnocool/trainer.hpp"

#include <cmath>

#include "magnocool/errors.hpp"

namespace magnocool {
namespace rl {

double evaluate_policy(Environment& env, SacAgent& agent, int episodes) {
  double total = 0.0;
  for (int e = 0; e < episodes; ++e) {
    Vec obs = env.reset();
    bool done = false;
    while (!done) {
      const auto [action, logp] = agent.sample_action(obs, /*deterministic=*/true);
      auto res = env.step(action);
      obs = std::move(res.observation);
      total += res.reward;
      done = res.done;
    }
  }
  return total / episodes;
}

TrainResult train(Environment& env, SacAgent& agent, const TrainOptions& opts,
                  const std::string& env_hash,
                  const std::function<void(const CurvePoint&)>& on_episode) {
  TrainResult result;
  ReplayBuffer buffer(env.observation_dim(), env.action_dim(),
                      agent.config().buffer_capacity);
  const int batch_size = agent.config().batch_size;

  auto snapshot = [&]() { return Checkpoint::serialize(agent, env_hash); };

  for (long episode = 1; episode <= opts.episodes; ++episode) {
    if (opts.episodes > 1) {
      const double frac = static_cast<double>(episode - 1) / (opts.episodes - 1);
      agent.set_noise_std(opts.noise_std_initial +
                          frac * (opts.noise_std_final - opts.noise_std_initial));
    } else {
      agent.set_noise_std(opts.noise_std_initial);
    }

    CurvePoint point;
    point.episode = episode;
    double quotient_sum = 0.0;
    Vec obs = env.reset();
    bool done = false;
    try {
      while (!done) {
        Vec action;
        if (result.total_env_steps < opts.warmup_steps) {
          action = agent.uniform_random_action();
        } else {
          action = agent.sample_action(obs, /*deterministic=*/false).first;
        }
        auto res = env.step(action);
        buffer.push(obs, action, res.reward, res.observation, res.done);
        obs = std::move(res.observation);
        point.net_reward += res.reward;
        quotient_sum += cooling_quotient(env.state(), env.config().system.target_mode,
                                         env.config().reward.n_thermal);
        done = res.done;
        ++result.total_env_steps;

        if (result.total_env_steps >= opts.warmup_steps &&
            buffer.size() >= batch_size &&
            result.total_env_steps % opts.update_every == 0) {
          const auto stats = agent.update(buffer.sample(batch_size, agent.rng()));
          point.q1_loss = stats.q1_loss;
          point.q2_loss = stats.q2_loss;
          point.actor_loss = stats.actor_loss;
          ++result.total_updates;
        }
      }
    } catch (const NumericalError& e) {
      result.diverged = true;
      result.divergence_reason = e.what();
    } catch (const EpisodeAborted& e) {
      result.diverged = true;
      result.divergence_reason = e.what();
    }

    point.alpha = agent.alpha();
    point.mean_reward = point.net_reward / env.config().steps_per_episode;
    point.mean_quotient = quotient_sum / env.config().steps_per_episode;

    if (result.diverged) {
      if (result.best_checkpoint.empty()) result.best_checkpoint = snapshot();
      result.curve.push_back(point);
      if (on_episode) on_episode(point);
      break;
    }

    if (episode % opts.eval_interval == 0 || episode == opts.episodes) {
      point.eval_score = evaluate_policy(env, agent, opts.eval_episodes);
      if (point.eval_score > result.best_eval_score) {
        result.best_eval_score = point.eval_score;
        result.best_episode = episode;
        result.best_checkpoint = snapshot();
      }
    }

    result.curve.push_back(point);
    if (on_episode) on_episode(point);
  }

  if (result.best_checkpoint.empty()) {
    result.best_checkpoint = snapshot();
    result.best_episode = opts.episodes;
  }
  return result;
}

}  // namespace rl
}  // namespace magnocool

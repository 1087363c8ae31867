#pragma once

#include <optional>
#include <vector>

#include "magnocool/types.hpp"

namespace magnocool {

/// One control interval of a rollout, sampled after the interval's
/// propagation. `action` is empty for non-agent runs.
struct EpisodeStep {
  double time = 0.0;  // end-of-interval time, units 1/omega_b
  Vec action;
  CVec controls;
  Vec occupancies;  // per mode
  double reward = 0.0;
};

/// Per-step record of one rollout plus episode aggregates for the target
/// mode's cooling quotient.
struct EpisodeTrace {
  std::vector<EpisodeStep> steps;
  int target_mode = 0;
  double n_thermal = 1.0;

  double net_reward = 0.0;
  double min_quotient = 0.0;
  double time_of_min = 0.0;  // units 1/omega_b

  int n_steps() const { return static_cast<int>(steps.size()); }
  double quotient_at(int k) const;

  /// Recomputes net_reward / min_quotient / time_of_min from the steps.
  void refresh_aggregates();

  /// Earliest step end-time at which the target quotient reaches `target`.
  std::optional<double> first_crossing(double target) const;
};

}  // namespace magnocool

#include "magnocool/trace.hpp"

#include <limits>

namespace magnocool {

double EpisodeTrace::quotient_at(int k) const {
  return steps[k].occupancies(target_mode) / n_thermal;
}

void EpisodeTrace::refresh_aggregates() {
  net_reward = 0.0;
  min_quotient = std::numeric_limits<double>::infinity();
  time_of_min = 0.0;
  for (int k = 0; k < n_steps(); ++k) {
    net_reward += steps[k].reward;
    const double q = quotient_at(k);
    if (q < min_quotient) {
      min_quotient = q;
      time_of_min = steps[k].time;
    }
  }
  if (steps.empty()) min_quotient = 0.0;
}

std::optional<double> EpisodeTrace::first_crossing(double target) const {
  for (int k = 0; k < n_steps(); ++k) {
    if (quotient_at(k) <= target) return steps[k].time;
  }
  return std::nullopt;
}

}  // namespace magnocool

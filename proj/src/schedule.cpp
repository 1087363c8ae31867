#include "magnocool/schedule.hpp"

#include <algorithm>
#include <stdexcept>

namespace magnocool {

int ControlSchedule::step_of(double t) const {
  const int k = static_cast<int>(t / dt);
  return std::clamp(k, 0, n_steps() - 1);
}

void ControlSchedule::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("ControlSchedule: dt must be > 0");
  if (n_steps() < 1) throw std::invalid_argument("ControlSchedule: empty schedule");
  if (!values.allFinite())
    throw std::invalid_argument("ControlSchedule: non-finite control value");
}

ControlSchedule ControlSchedule::zero(int n_slots, double dt, int n_steps) {
  ControlSchedule s;
  s.dt = dt;
  s.values = CMat::Zero(n_slots, n_steps);
  return s;
}

ControlSchedule ControlSchedule::constant(const ControlVector& value, double dt,
                                          int n_steps) {
  ControlSchedule s;
  s.dt = dt;
  s.values = value.replicate(1, n_steps);
  return s;
}

ControlSchedule ControlSchedule::sample(const std::function<CVec(double)>& law,
                                        int n_slots, double dt, int n_steps) {
  ControlSchedule s;
  s.dt = dt;
  s.values.resize(n_slots, n_steps);
  for (int k = 0; k < n_steps; ++k) s.values.col(k) = law((k + 0.5) * dt);
  return s;
}

}  // namespace magnocool

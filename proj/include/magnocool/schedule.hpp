#pragma once

#include <functional>

#include "magnocool/types.hpp"

namespace magnocool {

/// Piecewise-constant control time series: column k of `values` is held on
/// [k dt, (k+1) dt). Slots backing real couplings keep zero imaginary part.
struct ControlSchedule {
  double dt = 0.0;
  CMat values;  // n_slots x n_steps

  int n_slots() const { return static_cast<int>(values.rows()); }
  int n_steps() const { return static_cast<int>(values.cols()); }
  double t_end() const { return dt * n_steps(); }

  ControlVector at_step(int k) const { return values.col(k); }

  /// Index of the interval containing time t (clamped to the last one).
  int step_of(double t) const;

  void validate() const;  // dt > 0, finite entries

  static ControlSchedule zero(int n_slots, double dt, int n_steps);
  static ControlSchedule constant(const ControlVector& value, double dt, int n_steps);

  /// Samples a continuous control law at interval midpoints.
  static ControlSchedule sample(const std::function<CVec(double)>& law, int n_slots,
                                double dt, int n_steps);
};

}  // namespace magnocool

#pragma once

#include <functional>

#include "magnocool/types.hpp"

namespace magnocool {

struct NelderMeadResult {
  Vec x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Downhill-simplex minimization of f over R^n starting from x0 with an
/// initial simplex edge `step`. Stops when the simplex value spread falls
/// below ftol or after max_iter iterations.
NelderMeadResult nelder_mead(const std::function<double(const Vec&)>& f,
                             const Vec& x0, double step, double ftol,
                             int max_iter);

}  // namespace magnocool

#include "magnocool/formulas.hpp"

#include <cmath>
#include <stdexcept>

namespace magnocool {

std::pair<double, double> adiabatic_elimination(double delta_m, double delta_a,
                                                double kappa_a, double kappa_m,
                                                double J) {
  const double denom = delta_a * delta_a + kappa_a * kappa_a;
  if (denom == 0.0)
    throw std::invalid_argument(
        "adiabatic_elimination: delta_a = kappa_a = 0 is degenerate");
  const double j2 = J * J;
  return {delta_m - j2 * delta_a / denom, kappa_m + j2 * kappa_a / denom};
}

double bose_occupancy(double omega, double temperature) {
  if (!(omega > 0.0))
    throw std::invalid_argument("bose_occupancy: omega must be positive");
  if (temperature < 0.0)
    throw std::invalid_argument("bose_occupancy: temperature must be >= 0");
  if (temperature == 0.0) return 0.0;
  return 1.0 / std::expm1(omega / temperature);
}

}  // namespace magnocool

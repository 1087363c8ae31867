#pragma once

#include <utility>

namespace magnocool {

/// Effective magnon detuning and damping after eliminating a lossy cavity
/// coupled at rate J with detuning delta_a and damping kappa_a:
///   Delta_m  = delta_m - J^2 delta_a / (delta_a^2 + kappa_a^2)
///   kappa_m' = kappa_m + J^2 kappa_a / (delta_a^2 + kappa_a^2)
/// Throws std::invalid_argument for the degenerate delta_a = kappa_a = 0.
std::pair<double, double> adiabatic_elimination(double delta_m, double delta_a,
                                                double kappa_a, double kappa_m,
                                                double J);

/// Bose-Einstein occupancy 1/(exp(omega/T) - 1) in natural units
/// (hbar = k_B = 1); 0 at T = 0. Throws for omega <= 0 or T < 0.
double bose_occupancy(double omega, double temperature);

}  // namespace magnocool

#pragma once

#include "magnocool/system.hpp"
#include "magnocool/types.hpp"

namespace magnocool {

// Round-off floor applied to occupancies before they enter a denominator
// (cooling quotient, reward). Far below any cooling level of interest.
inline constexpr double kOccupancyFloor = 1e-12;

/// Quadrature covariance of a zero-mean Gaussian state, ordering
/// x1,p1,...,xN,pN with x = (c + c^dag)/sqrt(2), p = -i(c - c^dag)/sqrt(2).
/// Vacuum is sigma = I/2.
struct CovarianceState {
  Mat sigma;
  double time = 0.0;

  int n_modes() const { return static_cast<int>(sigma.rows()) / 2; }
};

/// Standard symplectic form, block-diagonal [[0,1],[-1,0]] per mode.
Mat symplectic_form(int n_modes);

void symmetrize(Mat& m);

/// Product thermal state: per-mode blocks (n_bar + 1/2) I2, time 0.
CovarianceState thermal_covariance(const SystemSpec& sys);

/// Mean excitation number (sigma_xx + sigma_pp - 1)/2 of one mode, clamped
/// below at `floor`.
double occupancy(const CovarianceState& state, int mode, double floor = 0.0);

/// occupancy / n_thermal, with the occupancy floored at `floor` so the
/// quotient (and the 1/quotient reward) stays finite and positive.
double cooling_quotient(const CovarianceState& state, int mode, double n_thermal,
                        double floor = kOccupancyFloor);

/// Symplectic spectrum of a positive-definite covariance, descending.
/// Physical Gaussian states have every entry >= 1/2. Computed in extended
/// precision via a Cholesky factor so the smallest eigenvalue stays
/// meaningful even when the largest is ~1e10.
Vec symplectic_eigenvalues(const Mat& sigma);

/// Smallest symplectic eigenvalue; -infinity when sigma is not positive
/// definite (already unphysical).
double min_symplectic_eigenvalue(const Mat& sigma);

}  // namespace magnocool

#pragma once

#include <complex>

#include <Eigen/Core>

namespace magnocool {

using Complex = std::complex<double>;

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Per-slot instantaneous control amplitudes. Slots backing real coupling
// kinds must carry zero imaginary part.
using ControlVector = Eigen::VectorXcd;

// All rates and frequencies are dimensionless in units of the reference
// phonon frequency; time is in units of its inverse. One "period" of the
// reference mode is 2*pi in these units.
inline constexpr double kTwoPi = 6.283185307179586476925286766559;

inline double periods_to_time(double periods) { return periods * kTwoPi; }
inline double time_to_periods(double t) { return t / kTwoPi; }

}  // namespace magnocool

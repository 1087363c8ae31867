#include "magnocool/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace magnocool {

Mat symplectic_form(int n_modes) {
  Mat omega = Mat::Zero(2 * n_modes, 2 * n_modes);
  for (int j = 0; j < n_modes; ++j) {
    omega(2 * j, 2 * j + 1) = 1.0;
    omega(2 * j + 1, 2 * j) = -1.0;
  }
  return omega;
}

void symmetrize(Mat& m) { m = 0.5 * (m + m.transpose()).eval(); }

CovarianceState thermal_covariance(const SystemSpec& sys) {
  sys.validate();
  const int n = sys.n_modes();
  CovarianceState st;
  st.sigma = Mat::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    const double v = sys.modes[j].bath_occupancy + 0.5;
    st.sigma(2 * j, 2 * j) = v;
    st.sigma(2 * j + 1, 2 * j + 1) = v;
  }
  st.time = 0.0;
  return st;
}

double occupancy(const CovarianceState& state, int mode, double floor) {
  if (mode < 0 || mode >= state.n_modes())
    throw std::invalid_argument("occupancy: mode index out of range");
  const double sxx = state.sigma(2 * mode, 2 * mode);
  const double spp = state.sigma(2 * mode + 1, 2 * mode + 1);
  return std::max(0.5 * (sxx + spp - 1.0), floor);
}

double cooling_quotient(const CovarianceState& state, int mode, double n_thermal,
                        double floor) {
  if (!(n_thermal > 0.0))
    throw std::invalid_argument("cooling_quotient: n_thermal must be positive");
  return occupancy(state, mode, floor) / n_thermal;
}

namespace {

using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using LCMat =
    Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;

// nu_j are the positive eigenvalues of i L^T Omega L for sigma = L L^T;
// i K is Hermitian for skew-symmetric K, so the spectrum is {+-nu_j} and
// the eigensolve is perfectly conditioned in the absolute sense.
bool symplectic_spectrum(const Mat& sigma, Vec& out) {
  const int d = static_cast<int>(sigma.rows());
  const int n = d / 2;
  LMat s = sigma.cast<long double>();
  s = (0.5L * (s + s.transpose())).eval();
  Eigen::LLT<LMat> llt(s);
  if (llt.info() != Eigen::Success) return false;
  LMat l = llt.matrixL();
  LMat omega = LMat::Zero(d, d);
  for (int j = 0; j < n; ++j) {
    omega(2 * j, 2 * j + 1) = 1.0L;
    omega(2 * j + 1, 2 * j) = -1.0L;
  }
  LMat k = l.transpose() * omega * l;
  LCMat h = std::complex<long double>(0.0L, 1.0L) * k.cast<std::complex<long double>>();
  Eigen::SelfAdjointEigenSolver<LCMat> es(h);
  if (es.info() != Eigen::Success) return false;
  // Eigenvalues ascend; the top n are the symplectic spectrum.
  out.resize(n);
  for (int j = 0; j < n; ++j)
    out(j) = static_cast<double>(es.eigenvalues()(d - 1 - j));
  return true;
}

}  // namespace

Vec symplectic_eigenvalues(const Mat& sigma) {
  if (sigma.rows() != sigma.cols() || sigma.rows() % 2 != 0)
    throw std::invalid_argument("symplectic_eigenvalues: need a 2Nx2N matrix");
  Vec nu;
  if (!symplectic_spectrum(sigma, nu))
    throw std::invalid_argument(
        "symplectic_eigenvalues: covariance not positive definite");
  return nu;
}

double min_symplectic_eigenvalue(const Mat& sigma) {
  Vec nu;
  if (!symplectic_spectrum(sigma, nu))
    return -std::numeric_limits<double>::infinity();
  return nu(nu.size() - 1);
}

}  // namespace magnocool

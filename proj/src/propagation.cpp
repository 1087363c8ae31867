#include "magnocool/propagation.hpp"

#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "magnocool/errors.hpp"

namespace magnocool {

Propagator make_propagator(const GeneratorPair& gen, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("make_propagator: dt must be > 0");
  const int d = static_cast<int>(gen.drift.rows());
  Mat aug = Mat::Zero(2 * d, 2 * d);
  aug.topLeftCorner(d, d) = gen.drift;
  aug.topRightCorner(d, d) = gen.diffusion;
  aug.bottomRightCorner(d, d) = -gen.drift.transpose();

  Mat e = (aug * dt).exp();
  if (!e.allFinite()) {
    std::ostringstream msg;
    msg << "propagation: matrix exponential produced non-finite entries"
        << " (||A|| = " << gen.drift.norm() << ", ||D|| = " << gen.diffusion.norm()
        << ", dt = " << dt << ", ||A||*dt = " << gen.drift.norm() * dt << ")";
    throw NumericalError(msg.str());
  }

  Propagator prop;
  prop.transition = e.topLeftCorner(d, d);
  // M(dt) = int exp(A(dt-s)) D exp(-A^T s) ds, so Q = M exp(A^T dt).
  prop.noise = e.topRightCorner(d, d) * prop.transition.transpose();
  symmetrize(prop.noise);
  prop.dt = dt;
  return prop;
}

CovarianceState apply(const Propagator& prop, const CovarianceState& state) {
  CovarianceState out;
  out.sigma = prop.transition * state.sigma * prop.transition.transpose() + prop.noise;
  symmetrize(out.sigma);
  out.time = state.time + prop.dt;
  if (!out.sigma.allFinite())
    throw NumericalError("propagation: covariance overflowed (||F|| = " +
                         std::to_string(prop.transition.norm()) + ")");
  return out;
}

CovarianceState propagate(const CovarianceState& state, const GeneratorPair& gen,
                          double dt) {
  return apply(make_propagator(gen, dt), state);
}

bool is_hurwitz(const Mat& drift) {
  Eigen::EigenSolver<Mat> es(drift, /*computeEigenvectors=*/false);
  return es.eigenvalues().real().maxCoeff() < 0.0;
}

CovarianceState steady_state(const GeneratorPair& gen) {
  if (!is_hurwitz(gen.drift))
    throw NoSteadyState(
        "steady_state: drift is not Hurwitz (dynamically unstable, no "
        "stationary covariance)");
  const int d = static_cast<int>(gen.drift.rows());
  const Mat eye = Mat::Identity(d, d);
  // vec(A X + X A^T) = (I (x) A + A (x) I) vec(X)
  Mat lhs = Eigen::kroneckerProduct(eye, gen.drift) +
            Eigen::kroneckerProduct(gen.drift, eye);
  Vec rhs = -Eigen::Map<const Vec>(gen.diffusion.data(), d * d);
  Vec x = lhs.fullPivLu().solve(rhs);
  CovarianceState out;
  out.sigma = Eigen::Map<const Mat>(x.data(), d, d);
  symmetrize(out.sigma);
  out.time = 0.0;
  return out;
}

}  // namespace magnocool

#include "magnocool/fock.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace magnocool {
namespace qme {

long FockConfig::total_dim() const {
  long d = 1;
  for (int c : cutoffs) d *= c;
  return d;
}

void FockConfig::validate() const {
  if (cutoffs.empty()) throw std::invalid_argument("FockConfig: no modes");
  for (int c : cutoffs) {
    if (c < 2) throw std::invalid_argument("FockConfig: cutoffs must be >= 2");
  }
  const long d = total_dim();
  if (d > max_total_dim) {
    const double bytes = 16.0 * static_cast<double>(d) * static_cast<double>(d);
    std::ostringstream msg;
    msg << "FockConfig: total dimension " << d << " exceeds the bound "
        << max_total_dim << " (a dense density matrix alone would need "
        << bytes / (1024.0 * 1024.0) << " MiB)";
    throw std::invalid_argument(msg.str());
  }
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMat destroy_op(int dim) {
  CMat a = CMat::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

FockOperators FockOperators::build(const FockConfig& config) {
  config.validate();
  FockOperators ops;
  ops.config = config;
  const int n = config.n_modes();
  for (int j = 0; j < n; ++j) {
    CMat op = CMat::Identity(1, 1);
    for (int k = 0; k < n; ++k) {
      const CMat factor = (k == j) ? destroy_op(config.cutoffs[k])
                                   : CMat::Identity(config.cutoffs[k], config.cutoffs[k]);
      op = kron(op, factor);
    }
    ops.a.push_back(op);
    ops.number.push_back(op.adjoint() * op);
    ops.number_up.push_back(op * op.adjoint());
  }
  return ops;
}

CMat thermal_density(const FockConfig& config, const std::vector<double>& nbar) {
  config.validate();
  if (nbar.size() != config.cutoffs.size())
    throw std::invalid_argument("thermal_density: nbar size mismatch");
  CMat rho = CMat::Identity(1, 1);
  for (int j = 0; j < config.n_modes(); ++j) {
    const int dim = config.cutoffs[j];
    Eigen::VectorXd p(dim);
    if (nbar[j] <= 0.0) {
      p.setZero();
      p(0) = 1.0;
    } else {
      const double q = nbar[j] / (1.0 + nbar[j]);
      for (int k = 0; k < dim; ++k) p(k) = std::pow(q, k);
      p /= p.sum();
    }
    CMat mode = CMat::Zero(dim, dim);
    mode.diagonal() = p.cast<Complex>();
    rho = kron(rho, mode);
  }
  return rho;
}

double top_level_population(const CMat& rho, const FockConfig& config) {
  const int n = config.n_modes();
  double worst = 0.0;
  const long dim = config.total_dim();
  for (int j = 0; j < n; ++j) {
    // Stride over basis states whose j-th index is the top retained level.
    long inner = 1;
    for (int k = j + 1; k < n; ++k) inner *= config.cutoffs[k];
    const int top = config.cutoffs[j] - 1;
    double pop = 0.0;
    for (long idx = 0; idx < dim; ++idx) {
      if ((idx / inner) % config.cutoffs[j] == top) pop += rho(idx, idx).real();
    }
    worst = std::max(worst, pop);
  }
  return worst;
}

}  // namespace qme
}  // namespace magnocool

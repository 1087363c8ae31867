#include "magnocool/qme.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "magnocool/errors.hpp"

namespace magnocool {
namespace qme {

CMat build_hamiltonian(const SystemSpec& sys, const ControlVector& controls,
                       const FockOperators& ops) {
  sys.validate();
  if (controls.size() != sys.n_control_slots)
    throw std::invalid_argument("build_hamiltonian: control vector length mismatch");
  if (!controls.allFinite())
    throw std::invalid_argument("build_hamiltonian: non-finite control value");
  if (ops.config.n_modes() != sys.n_modes())
    throw std::invalid_argument("build_hamiltonian: operator set mode count mismatch");

  const long dim = ops.config.total_dim();
  CMat h = CMat::Zero(dim, dim);
  for (int j = 0; j < sys.n_modes(); ++j)
    h += sys.modes[j].frequency * ops.number[j];

  for (const auto& c : sys.couplings) {
    const Complex amp = c.amplitude.kind == AmplitudeSource::Kind::Fixed
                            ? c.amplitude.value
                            : controls(c.amplitude.slot);
    const CMat& am = ops.a[c.mode_m];
    const CMat& ab = ops.a[c.mode_b];
    switch (c.kind) {
      case CouplingKind::LinearizedComplex: {
        const CMat xb = ab + ab.adjoint();
        h += (amp * am + std::conj(amp) * am.adjoint()) * xb;
        break;
      }
      case CouplingKind::PositionPosition: {
        if (amp.imag() != 0.0)
          throw std::invalid_argument("PositionPosition coupling requires real amplitude");
        h += amp.real() * (am + am.adjoint()) * (ab + ab.adjoint());
        break;
      }
      case CouplingKind::BeamSplitterRWA: {
        if (amp.imag() != 0.0)
          throw std::invalid_argument("BeamSplitterRWA coupling requires real amplitude");
        h += amp.real() * (am * ab.adjoint() + am.adjoint() * ab);
        break;
      }
    }
  }
  // Kill rounding asymmetry from the operator products.
  h = 0.5 * (h + h.adjoint()).eval();
  return h;
}

CMat lindblad_rhs(const CMat& rho, const CMat& h, const SystemSpec& sys,
                  const FockOperators& ops) {
  const Complex minus_i(0.0, -1.0);
  CMat out = minus_i * (h * rho - rho * h);
  for (int j = 0; j < sys.n_modes(); ++j) {
    const double kappa = sys.modes[j].damping;
    if (kappa == 0.0) continue;
    const double nbar = sys.modes[j].bath_occupancy;
    const CMat& a = ops.a[j];
    const CMat& num = ops.number[j];

    const double down = kappa * (nbar + 1.0);
    const CMat arho = a * rho;
    out += down * (arho * a.adjoint() - 0.5 * (num * rho + rho * num));

    if (nbar > 0.0) {
      const double up = kappa * nbar;
      // c = a^dag, c^dag c = a a^dag (truncated product, see FockOperators)
      const CMat& num_up = ops.number_up[j];
      const CMat adrho = a.adjoint() * rho;
      out += up * (adrho * a - 0.5 * (num_up * rho + rho * num_up));
    }
  }
  return out;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0,
                 kA53 = 64448.0 / 6561.0, kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0,
                 kA63 = 46732.0 / 5247.0, kA64 = 49.0 / 176.0,
                 kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
constexpr double kE1 = 35.0 / 384.0 - 5179.0 / 57600.0;
constexpr double kE3 = 500.0 / 1113.0 - 7571.0 / 16695.0;
constexpr double kE4 = 125.0 / 192.0 - 393.0 / 640.0;
constexpr double kE5 = -2187.0 / 6784.0 + 92097.0 / 339200.0;
constexpr double kE6 = 11.0 / 84.0 - 187.0 / 2100.0;
constexpr double kE7 = -1.0 / 40.0;

double error_norm(const CMat& err, const CMat& y0, const CMat& y1, double atol,
                  double rtol) {
  double acc = 0.0;
  const auto n = err.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double scale =
        atol + rtol * std::max(std::abs(y0.data()[i]), std::abs(y1.data()[i]));
    const double e = std::abs(err.data()[i]) / scale;
    acc += e * e;
  }
  return std::sqrt(acc / static_cast<double>(n));
}

}  // namespace

QmeTrajectory evolve_qme(const CMat& rho0, const SystemSpec& sys,
                         const ControlSchedule& schedule, double t_end,
                         const FockOperators& ops, const QmeOptions& opts) {
  schedule.validate();
  if (schedule.n_slots() != sys.n_control_slots)
    throw std::invalid_argument("evolve_qme: schedule slot count mismatch");
  if (rho0.rows() != ops.config.total_dim())
    throw std::invalid_argument("evolve_qme: density matrix dimension mismatch");
  if (!(t_end > 0.0)) throw std::invalid_argument("evolve_qme: t_end must be > 0");
  if (schedule.t_end() < t_end * (1.0 - 1e-12))
    throw std::invalid_argument("evolve_qme: schedule does not cover [0, t_end]");

  QmeTrajectory traj;
  traj.samples.push_back({0.0, rho0});

  auto record_diagnostics = [&](const CMat& rho) {
    traj.max_trace_drift =
        std::max(traj.max_trace_drift, std::abs(rho.trace().real() - 1.0) +
                                           std::abs(rho.trace().imag()));
    const double top = top_level_population(rho, ops.config);
    traj.max_top_level_population = std::max(traj.max_top_level_population, top);
    if (top >= opts.reliability_threshold) traj.reliable = false;
  };
  record_diagnostics(rho0);

  CMat rho = rho0;
  double t = 0.0;
  const int n_intervals = std::min(
      schedule.n_steps(),
      static_cast<int>(std::ceil(t_end / schedule.dt - 1e-12)));

  for (int interval = 0; interval < n_intervals; ++interval) {
    const double t_stop = std::min((interval + 1) * schedule.dt, t_end);
    const CMat h_mat = build_hamiltonian(sys, schedule.at_step(interval), ops);
    auto f = [&](const CMat& y) { return lindblad_rhs(y, h_mat, sys, ops); };

    double h = std::min(opts.h_init, t_stop - t);
    CMat k1 = f(rho);
    while (t < t_stop * (1.0 - 1e-15) ) {
      h = std::min(h, t_stop - t);
      const CMat k2 = f(rho + (h * kA21) * k1);
      const CMat k3 = f(rho + h * (kA31 * k1 + kA32 * k2));
      const CMat k4 = f(rho + h * (kA41 * k1 + kA42 * k2 + kA43 * k3));
      const CMat k5 = f(rho + h * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4));
      const CMat k6 =
          f(rho + h * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5));
      const CMat ynew =
          rho + h * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
      const CMat k7 = f(ynew);
      const CMat err =
          h * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * k7);
      const double en = error_norm(err, rho, ynew, opts.atol, opts.rtol);
      if (en <= 1.0) {
        t += h;
        rho = ynew;
        k1 = k7;  // first-same-as-last
      }
      const double factor =
          std::clamp(0.9 * std::pow(std::max(en, 1e-12), -0.2), 0.2, 5.0);
      h *= factor;
      if (h < opts.h_min)
        throw StiffnessError(
            "evolve_qme: step size underflow; the instance is too stiff for "
            "the Fock-space integrator, reduce the system or use the moment "
            "method");
    }
    t = t_stop;
    traj.samples.push_back({t, rho});
    record_diagnostics(rho);
  }
  return traj;
}

MomentSet moments_from_density(const CMat& rho, const SystemSpec& sys,
                               const FockOperators& ops) {
  const int n = sys.n_modes();
  const int d = 2 * n;
  const long dim = ops.config.total_dim();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  // Quadrature operators x_j, p_j on the full space.
  std::vector<CMat> r(d);
  for (int j = 0; j < n; ++j) {
    const CMat& a = ops.a[j];
    r[2 * j] = inv_sqrt2 * (a + a.adjoint());
    r[2 * j + 1] = Complex(0.0, -1.0) * inv_sqrt2 * (a - a.adjoint());
  }

  std::vector<CMat> rho_r(d);
  for (int i = 0; i < d; ++i) rho_r[i] = rho * r[i];

  Vec mean(d);
  for (int i = 0; i < d; ++i) mean(i) = rho_r[i].trace().real();

  MomentSet out;
  out.cov.sigma = Mat::Zero(d, d);
  out.cov.time = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      // Tr(rho r_i r_j) = sum_ab (rho r_i)_ab (r_j)_ba
      const Complex tij = (rho_r[i].transpose().cwiseProduct(r[j])).sum();
      const Complex tji = (rho_r[j].transpose().cwiseProduct(r[i])).sum();
      const double sym = 0.5 * (tij + tji).real();
      out.cov.sigma(i, j) = sym - mean(i) * mean(j);
      out.cov.sigma(j, i) = out.cov.sigma(i, j);
    }
  }

  out.occupancies.resize(n);
  for (int j = 0; j < n; ++j) {
    Complex tr(0.0, 0.0);
    for (long k = 0; k < dim; ++k) tr += rho(k, k) * ops.number[j](k, k);
    out.occupancies(j) = tr.real();
  }
  out.first_moments = mean;
  return out;
}

}  // namespace qme
}  // namespace magnocool

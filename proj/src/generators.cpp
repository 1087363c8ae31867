#include "magnocool/generators.hpp"

#include <cmath>
#include <stdexcept>

#include "magnocool/covariance.hpp"

namespace magnocool {

namespace {

Complex resolve_amplitude(const AmplitudeSource& src, const ControlVector& controls) {
  if (src.kind == AmplitudeSource::Kind::Fixed) return src.value;
  return controls(src.slot);
}

double require_real(Complex amp, const char* kind_name) {
  if (amp.imag() != 0.0)
    throw std::invalid_argument(std::string(kind_name) +
                                " coupling requires a real amplitude");
  return amp.real();
}

}  // namespace

GeneratorPair build_generators(const SystemSpec& sys, const ControlVector& controls) {
  sys.validate();
  if (controls.size() != sys.n_control_slots)
    throw std::invalid_argument("build_generators: control vector length " +
                                std::to_string(controls.size()) + ", expected " +
                                std::to_string(sys.n_control_slots));
  if (!controls.allFinite())
    throw std::invalid_argument("build_generators: non-finite control value");

  const int n = sys.n_modes();
  const int d = 2 * n;

  // H = (1/2) r^T M r; bare modes contribute omega (x^2 + p^2)/2.
  Mat m = Mat::Zero(d, d);
  for (int j = 0; j < n; ++j) {
    m(2 * j, 2 * j) = sys.modes[j].frequency;
    m(2 * j + 1, 2 * j + 1) = sys.modes[j].frequency;
  }

  for (const auto& c : sys.couplings) {
    const Complex amp = resolve_amplitude(c.amplitude, controls);
    const int xm = 2 * c.mode_m, pm = 2 * c.mode_m + 1;
    const int xb = 2 * c.mode_b, pb = 2 * c.mode_b + 1;
    switch (c.kind) {
      case CouplingKind::LinearizedComplex: {
        // (G m + G* m^dag)(b + b^dag) = 2 Re(G) x_m x_b - 2 Im(G) p_m x_b
        m(xm, xb) += 2.0 * amp.real();
        m(xb, xm) += 2.0 * amp.real();
        m(pm, xb) += -2.0 * amp.imag();
        m(xb, pm) += -2.0 * amp.imag();
        break;
      }
      case CouplingKind::PositionPosition: {
        const double w = require_real(amp, "PositionPosition");
        // W (m + m^dag)(b + b^dag) = 2 W x_m x_b
        m(xm, xb) += 2.0 * w;
        m(xb, xm) += 2.0 * w;
        break;
      }
      case CouplingKind::BeamSplitterRWA: {
        const double g = require_real(amp, "BeamSplitterRWA");
        // G (m b^dag + m^dag b) = G (x_m x_b + p_m p_b)
        m(xm, xb) += g;
        m(xb, xm) += g;
        m(pm, pb) += g;
        m(pb, pm) += g;
        break;
      }
      default:
        throw std::logic_error("build_generators: unknown coupling kind");
    }
  }

  GeneratorPair gen;
  gen.drift = symplectic_form(n) * m;
  gen.diffusion = Mat::Zero(d, d);
  for (int j = 0; j < n; ++j) {
    const double kappa = sys.modes[j].damping;
    gen.drift(2 * j, 2 * j) += -0.5 * kappa;
    gen.drift(2 * j + 1, 2 * j + 1) += -0.5 * kappa;
    const double diff = kappa * (sys.modes[j].bath_occupancy + 0.5);
    gen.diffusion(2 * j, 2 * j) = diff;
    gen.diffusion(2 * j + 1, 2 * j + 1) = diff;
  }
  return gen;
}

}  // namespace magnocool

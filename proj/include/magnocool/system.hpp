#pragma once

#include <string>
#include <vector>

#include "magnocool/types.hpp"

namespace magnocool {

/// One bosonic mode and its bath.
struct ModeSpec {
  std::string label;
  double frequency = 1.0;       // rotating-frame frequency (detuning), > 0
  double damping = 0.0;         // full energy decay rate kappa, >= 0
  double bath_occupancy = 0.0;  // mean thermal quanta n_bar of the bath, >= 0
};

/// Bilinear interaction terms between two modes, written with the first
/// mode of the pair as (m, m^dag) and the second as (b, b^dag):
///   LinearizedComplex:  (G m + conj(G) m^dag)(b + b^dag), G complex
///   PositionPosition:   W (m + m^dag)(b + b^dag),         W real
///   BeamSplitterRWA:    G (m b^dag + m^dag b),            G real
enum class CouplingKind { LinearizedComplex, PositionPosition, BeamSplitterRWA };

/// Where a coupling amplitude comes from: a fixed value, or one of the
/// time-dependent control slots.
struct AmplitudeSource {
  enum class Kind { Fixed, ControlSlot };
  Kind kind = Kind::Fixed;
  Complex value{0.0, 0.0};
  int slot = -1;

  static AmplitudeSource fixed(Complex v) { return {Kind::Fixed, v, -1}; }
  static AmplitudeSource control_slot(int s) { return {Kind::ControlSlot, {}, s}; }
};

struct CouplingSpec {
  CouplingKind kind = CouplingKind::LinearizedComplex;
  int mode_m = 0;  // carries the complex structure for LinearizedComplex
  int mode_b = 1;  // enters through (b + b^dag)
  AmplitudeSource amplitude;
};

/// Declarative description of modes, baths and control-slotted couplings.
/// Compiles to drift/diffusion generators via build_generators().
struct SystemSpec {
  std::vector<ModeSpec> modes;
  std::vector<CouplingSpec> couplings;
  int n_control_slots = 0;
  std::vector<std::string> slot_labels;  // sized n_control_slots
  int target_mode = 0;                   // mode whose cooling quotient is optimized

  int n_modes() const { return static_cast<int>(modes.size()); }
  int dim() const { return 2 * n_modes(); }

  /// True when the slot feeds a LinearizedComplex coupling and therefore
  /// carries a complex amplitude (two trace columns, two actions).
  bool slot_is_complex(int slot) const;

  int mode_index(const std::string& label) const;  // -1 when absent

  /// Throws std::invalid_argument on any violated invariant: non-positive
  /// frequency, negative rates, out-of-range mode/slot indices, self
  /// couplings, or an unreferenced control slot.
  void validate() const;
};

/// Magnon (index 0) + phonon (index 1) with one complex control slot "G"
/// driving a LinearizedComplex coupling. delta_m is the magnon detuning;
/// the phonon sits at the reference frequency 1.
SystemSpec bipartite_system(double delta_m, double kappa_m, double kappa_b,
                            double n_m, double n_b);

/// Photon (0) + magnon (1) + phonon (2) chain with two real control slots
/// "OmegaS" (photon-magnon) and "OmegaP" (magnon-phonon), both
/// PositionPosition. delta_a is the cavity detuning, omega_m the magnon
/// frequency; phonon at 1.
SystemSpec tripartite_system(double delta_a, double omega_m, double kappa_a,
                             double kappa_m, double kappa_b, double n_a,
                             double n_m, double n_b);

}  // namespace magnocool

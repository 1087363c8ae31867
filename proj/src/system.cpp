#include "magnocool/system.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace magnocool {

bool SystemSpec::slot_is_complex(int slot) const {
  for (const auto& c : couplings) {
    if (c.amplitude.kind == AmplitudeSource::Kind::ControlSlot &&
        c.amplitude.slot == slot && c.kind == CouplingKind::LinearizedComplex) {
      return true;
    }
  }
  return false;
}

int SystemSpec::mode_index(const std::string& label) const {
  for (int i = 0; i < n_modes(); ++i) {
    if (modes[i].label == label) return i;
  }
  return -1;
}

void SystemSpec::validate() const {
  if (modes.empty()) throw std::invalid_argument("SystemSpec: no modes");
  for (const auto& m : modes) {
    if (!(m.frequency > 0.0) || !std::isfinite(m.frequency))
      throw std::invalid_argument("SystemSpec: mode '" + m.label +
                                  "' frequency must be positive");
    if (m.damping < 0.0 || !std::isfinite(m.damping))
      throw std::invalid_argument("SystemSpec: mode '" + m.label +
                                  "' damping must be >= 0");
    if (m.bath_occupancy < 0.0 || !std::isfinite(m.bath_occupancy))
      throw std::invalid_argument("SystemSpec: mode '" + m.label +
                                  "' bath occupancy must be >= 0");
  }
  if (target_mode < 0 || target_mode >= n_modes())
    throw std::invalid_argument("SystemSpec: target_mode out of range");
  if (n_control_slots < 0)
    throw std::invalid_argument("SystemSpec: negative control slot count");
  if (!slot_labels.empty() &&
      static_cast<int>(slot_labels.size()) != n_control_slots)
    throw std::invalid_argument("SystemSpec: slot_labels size mismatch");

  std::set<int> referenced;
  for (const auto& c : couplings) {
    if (c.mode_m < 0 || c.mode_m >= n_modes() || c.mode_b < 0 ||
        c.mode_b >= n_modes())
      throw std::invalid_argument("SystemSpec: coupling mode index out of range");
    if (c.mode_m == c.mode_b)
      throw std::invalid_argument("SystemSpec: coupling mode pair must be distinct");
    if (c.amplitude.kind == AmplitudeSource::Kind::ControlSlot) {
      if (c.amplitude.slot < 0 || c.amplitude.slot >= n_control_slots)
        throw std::invalid_argument("SystemSpec: control slot index out of range");
      referenced.insert(c.amplitude.slot);
    } else {
      if (c.kind != CouplingKind::LinearizedComplex &&
          c.amplitude.value.imag() != 0.0)
        throw std::invalid_argument(
            "SystemSpec: real coupling kind given a complex fixed amplitude");
    }
  }
  for (int s = 0; s < n_control_slots; ++s) {
    if (!referenced.count(s))
      throw std::invalid_argument("SystemSpec: control slot " +
                                  std::to_string(s) +
                                  " not referenced by any coupling");
  }
}

SystemSpec bipartite_system(double delta_m, double kappa_m, double kappa_b,
                            double n_m, double n_b) {
  SystemSpec sys;
  sys.modes = {{"magnon", delta_m, kappa_m, n_m}, {"phonon", 1.0, kappa_b, n_b}};
  CouplingSpec c;
  c.kind = CouplingKind::LinearizedComplex;
  c.mode_m = 0;
  c.mode_b = 1;
  c.amplitude = AmplitudeSource::control_slot(0);
  sys.couplings = {c};
  sys.n_control_slots = 1;
  sys.slot_labels = {"G"};
  sys.target_mode = 1;
  sys.validate();
  return sys;
}

SystemSpec tripartite_system(double delta_a, double omega_m, double kappa_a,
                             double kappa_m, double kappa_b, double n_a,
                             double n_m, double n_b) {
  SystemSpec sys;
  sys.modes = {{"photon", delta_a, kappa_a, n_a},
               {"magnon", omega_m, kappa_m, n_m},
               {"phonon", 1.0, kappa_b, n_b}};
  CouplingSpec cs;
  cs.kind = CouplingKind::PositionPosition;
  cs.mode_m = 0;
  cs.mode_b = 1;
  cs.amplitude = AmplitudeSource::control_slot(0);
  CouplingSpec cp;
  cp.kind = CouplingKind::PositionPosition;
  cp.mode_m = 1;
  cp.mode_b = 2;
  cp.amplitude = AmplitudeSource::control_slot(1);
  sys.couplings = {cs, cp};
  sys.n_control_slots = 2;
  sys.slot_labels = {"OmegaS", "OmegaP"};
  sys.target_mode = 2;
  sys.validate();
  return sys;
}

}  // namespace magnocool

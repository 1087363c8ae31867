#pragma once

#include <vector>

#include "magnocool/types.hpp"

namespace magnocool {
namespace qme {

/// Truncated Fock-space dimensions, one per mode.
struct FockConfig {
  std::vector<int> cutoffs;
  int max_total_dim = 4096;

  int n_modes() const { return static_cast<int>(cutoffs.size()); }
  long total_dim() const;

  /// Throws std::invalid_argument when a cutoff is < 2 or the product
  /// exceeds max_total_dim (the message carries a dense-matrix memory
  /// estimate for the requested size).
  void validate() const;
};

CMat kron(const CMat& a, const CMat& b);

/// Single-mode annihilation operator on a `dim`-level truncation.
CMat destroy_op(int dim);

/// Per-mode annihilation (and cached number) operators embedded in the
/// full tensor-product space.
struct FockOperators {
  FockConfig config;
  std::vector<CMat> a;          // annihilation
  std::vector<CMat> number;     // a^dag a
  // a a^dag as it truly acts on the truncation (NOT number + 1: the top
  // level maps to zero); using it keeps the dissipators exactly trace-free.
  std::vector<CMat> number_up;

  static FockOperators build(const FockConfig& config);
};

/// Product of per-mode truncated thermal states, each renormalized on its
/// cutoff so the total trace is exactly 1.
CMat thermal_density(const FockConfig& config, const std::vector<double>& nbar);

/// Largest per-mode marginal population of the top retained Fock level;
/// the truncation-reliability diagnostic.
double top_level_population(const CMat& rho, const FockConfig& config);

}  // namespace qme
}  // namespace magnocool

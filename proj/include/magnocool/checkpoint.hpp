#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "magnocool/sac.hpp"

namespace magnocool {
namespace rl {

/// Versioned binary container for a full agent: every network and target
/// as named little-endian float64 tensors with explicit shapes, optimizer
/// moments, the temperature state, hyperparameters, the environment-config
/// hash, and the RNG stream. Round-trips bitwise.
struct Checkpoint {
  static constexpr char kMagic[8] = {'M', 'Q', 'C', 'K', 'P', 'T', '0', '1'};
  static constexpr std::uint32_t kVersion = 1;

  std::string env_config_hash;  // hex digest of the owning env config
  std::string hyper_json;       // SacConfig + dims, for validation on load

  static std::vector<std::uint8_t> serialize(const SacAgent& agent,
                                             const std::string& env_hash);

  /// Rebuilds an agent from bytes. Throws std::invalid_argument on a bad
  /// magic/version or (when expect_env_hash is non-empty and force is
  /// false) a mismatched environment hash.
  static SacAgent deserialize(const std::vector<std::uint8_t>& bytes,
                              const std::string& expect_env_hash = "",
                              bool force = false);

  static std::string env_hash_of(const std::vector<std::uint8_t>& bytes);
};

void write_checkpoint_file(const std::string& path,
                           const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> read_checkpoint_file(const std::string& path);

/// Copies a teacher's weights, optimizer moments and temperature into
/// `agent` (imitation warm start). Observation/action dimensions must
/// match; a mismatch throws with both shape sets in the message.
void warm_start_from(const std::vector<std::uint8_t>& teacher_bytes,
                     SacAgent& agent);

}  // namespace rl
}  // namespace magnocool

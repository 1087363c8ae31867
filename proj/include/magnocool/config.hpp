#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "magnocool/env.hpp"
#include "magnocool/sac.hpp"
#include "magnocool/system.hpp"
#include "magnocool/trainer.hpp"

namespace magnocool {
namespace io {

using nlohmann::json;

/// Fully-defaulted run configuration; the schema every CLI command
/// validates against. Unknown keys and wrong types are rejected with the
/// offending path in the message.
json default_config();

/// Returns `user` merged over the defaults after validation.
json validate_config(const json& user);

SystemSpec system_from_config(const json& cfg);

/// The thermal phonon number n_T: the target mode's bath occupancy.
double n_thermal_from_config(const json& cfg);

rl::EnvConfig env_from_config(const json& cfg);
rl::SacConfig agent_from_config(const json& cfg);
rl::TrainOptions train_options_from_config(const json& cfg);

std::uint64_t seed_from_config(const json& cfg);

/// Canonical serialization used for hashing (sorted keys, stable number
/// formatting) of the environment-defining part of a config.
std::string env_hash_of_config(const json& cfg);

}  // namespace io
}  // namespace magnocool

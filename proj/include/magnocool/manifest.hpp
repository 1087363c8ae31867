#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace magnocool {
namespace io {

/// Run provenance: the full config snapshot (seed included), code version,
/// and the hashes of every output the run wrote. The content hash covers
/// config + seed + code version, so a manifest plus the code version pins
/// every output byte; timestamps are recorded but excluded from the hash.
struct RunManifest {
  nlohmann::json config;
  std::string command;
  std::string code_version;
  std::string created_utc;
  std::string content_hash;
  struct Output {
    std::string name;
    std::string path;
    std::string sha256;
  };
  std::vector<Output> outputs;

  static RunManifest make(const std::string& command, const nlohmann::json& config);
  void add_output(const std::string& name, const std::string& path,
                  const std::string& content);

  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& j);

  void write(const std::string& path) const;
  static RunManifest read(const std::string& path);
};

}  // namespace io
}  // namespace magnocool

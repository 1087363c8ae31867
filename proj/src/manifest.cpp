#include "magnocool/manifest.hpp"

#include <ctime>

#include "magnocool/sha256.hpp"
#include "magnocool/trace_io.hpp"
#include "magnocool/version.hpp"

namespace magnocool {
namespace io {

using nlohmann::json;

RunManifest RunManifest::make(const std::string& command, const json& config) {
  RunManifest m;
  m.command = command;
  m.config = config;
  m.code_version = kVersion;

  char buf[32];
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  m.created_utc = buf;

  json hashed;
  hashed["command"] = command;
  hashed["config"] = config;
  hashed["code_version"] = m.code_version;
  m.content_hash = sha256_hex(hashed.dump());
  return m;
}

void RunManifest::add_output(const std::string& name, const std::string& path,
                             const std::string& content) {
  outputs.push_back({name, path, sha256_hex(content)});
}

json RunManifest::to_json() const {
  json j;
  j["command"] = command;
  j["config"] = config;
  j["code_version"] = code_version;
  j["created_utc"] = created_utc;
  j["content_hash"] = content_hash;
  j["outputs"] = json::array();
  for (const auto& o : outputs)
    j["outputs"].push_back({{"name", o.name}, {"path", o.path}, {"sha256", o.sha256}});
  return j;
}

RunManifest RunManifest::from_json(const json& j) {
  RunManifest m;
  m.command = j.at("command");
  m.config = j.at("config");
  m.code_version = j.at("code_version");
  m.created_utc = j.at("created_utc");
  m.content_hash = j.at("content_hash");
  for (const auto& o : j.at("outputs"))
    m.outputs.push_back({o.at("name"), o.at("path"), o.at("sha256")});
  return m;
}

void RunManifest::write(const std::string& path) const {
  write_text_file(path, to_json().dump(2) + "\n");
}

RunManifest RunManifest::read(const std::string& path) {
  return from_json(json::parse(read_text_file(path)));
}

}  // namespace io
}  // namespace magnocool

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace magnocool {

/// Hex digest of the SHA-256 hash of `data`.
std::string sha256_hex(const void* data, size_t len);
std::string sha256_hex(const std::string& s);
std::string sha256_hex(const std::vector<std::uint8_t>& v);

}  // namespace magnocool

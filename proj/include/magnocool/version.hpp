#pragma once

namespace magnocool {

inline constexpr char kVersion[] = "0.1.0";

}  // namespace magnocool

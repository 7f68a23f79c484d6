#pragma once

namespace entstruct {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace entstruct

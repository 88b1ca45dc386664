#pragma once

namespace smn {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace smn

#pragma once

namespace hms {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hms

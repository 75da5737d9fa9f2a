#pragma once

namespace mixedpart {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace mixedpart

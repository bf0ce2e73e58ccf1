#pragma once

namespace bandvar {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bandvar

#pragma once

namespace ubnet {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ubnet

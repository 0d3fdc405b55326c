#pragma once

namespace discourse {

inline constexpr const char* kEngineName = "discourse-sim";
inline constexpr const char* kEngineVersion = "0.1.0";

} // namespace discourse

#pragma once

namespace relbell {

inline constexpr const char* kToolName = "relbell";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace relbell

#pragma once

namespace groupcap {

inline constexpr const char* kToolName = "groupcap";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace groupcap

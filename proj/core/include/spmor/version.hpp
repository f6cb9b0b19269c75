#pragma once

namespace spmor {

inline constexpr const char* kToolName = "spmor";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace spmor

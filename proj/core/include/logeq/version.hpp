#pragma once

namespace logeq {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace logeq

#pragma once

namespace kron {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace kron

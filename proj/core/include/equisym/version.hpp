#pragma once

namespace equisym {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace equisym

#pragma once

namespace lassopaths {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lassopaths

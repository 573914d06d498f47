#pragma once

namespace floqlab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace floqlab

#pragma once

namespace clat {

inline constexpr const char* version = "0.1.0";

}  // namespace clat

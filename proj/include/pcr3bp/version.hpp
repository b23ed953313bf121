#pragma once

namespace pcr3bp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pcr3bp

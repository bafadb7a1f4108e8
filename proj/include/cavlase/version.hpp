#pragma once

namespace cavlase {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cavlase

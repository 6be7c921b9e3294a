#pragma once

namespace regprod {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace regprod

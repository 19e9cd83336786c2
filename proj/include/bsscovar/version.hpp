#pragma once

namespace bsscovar {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bsscovar

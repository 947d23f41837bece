#pragma once

namespace kcsp {
inline constexpr const char* kToolVersion = "0.1.0";
}

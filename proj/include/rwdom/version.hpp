#pragma once

namespace rwdom {
inline constexpr const char* kVersion = "0.1.0";
}

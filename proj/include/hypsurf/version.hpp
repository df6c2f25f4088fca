#pragma once

namespace hypsurf {
inline constexpr const char* kVersion = "1.0.0";
}

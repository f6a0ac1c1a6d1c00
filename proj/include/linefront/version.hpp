#pragma once

namespace linefront {
inline constexpr const char* kVersion = "0.1.0";
}

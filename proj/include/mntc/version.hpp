#pragma once

namespace mntc {
inline constexpr const char *kVersion = "0.1.0";
}

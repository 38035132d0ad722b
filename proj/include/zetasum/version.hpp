#pragma once

#define ZETASUM_VERSION_MAJOR 0
#define ZETASUM_VERSION_MINOR 1
#define ZETASUM_VERSION_PATCH 0

namespace zetasum {

inline constexpr const char* version_string = "0.1.0";

}  // namespace zetasum

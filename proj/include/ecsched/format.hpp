#pragma once

#include <cstdio>
#include <string>

namespace ecsched {

/// Shortest fixed formatting with 12 significant digits; shared by every
/// machine-readable dump so repeated runs emit identical bytes.
inline std::string format_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace ecsched

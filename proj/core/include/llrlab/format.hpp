#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace llrlab {

// 17 significant digits: enough for an exact round trip of any double.
// Infinities render as inf / -inf, NaN as nan.
inline std::string format_real(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace llrlab

#pragma once

#include <cstdio>
#include <string>

namespace ffp {

/// 17-significant-digit decimal form: round-trips any double and is stable
/// across runs and platforms, so traces and reports diff cleanly.
inline std::string format_g17(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

}  // namespace ffp

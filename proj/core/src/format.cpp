#include "esr/format.hpp"

#include <cmath>
#include <cstdio>

namespace esr {

std::string format_double(double value, int significant_digits) {
    if (value == 0.0) value = 0.0;  // drops the sign of -0
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*g", significant_digits, value);
    return buffer;
}

}  // namespace esr

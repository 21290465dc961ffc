#pragma once

#include <string>

namespace esr {

/// printf-style %.{digits}g, with negative zero printed as "0".
std::string format_double(double value, int significant_digits);

inline constexpr int kRoundTripDigits = 17;

}  // namespace esr

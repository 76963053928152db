#pragma once

#include <string>

namespace hyperlim {

/// `%.<digits>g` rendering. Negative zero is printed as 0 so that output does
/// not depend on the sign of a cancelled sum.
std::string format_number(double value, int significant_digits);

inline std::string format17(double value) { return format_number(value, 17); }
inline std::string format12(double value) { return format_number(value, 12); }

}  // namespace hyperlim

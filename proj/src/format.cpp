#include "hyperlim/format.hpp"

#include <cstdio>

namespace hyperlim {

std::string format_number(double value, int significant_digits) {
    if (value == 0.0) {
        value = 0.0;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", significant_digits, value);
    return buf;
}

}  // namespace hyperlim

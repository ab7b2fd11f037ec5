#pragma once

#include <string>

namespace coda {

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

/// Fixed-point text with `digits` decimals; "-0.00" is printed as "0.00".
std::string format_fixed(double v, int digits);

}  // namespace coda

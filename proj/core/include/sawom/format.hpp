#pragma once

#include <string>

namespace sawom::fmt {

// Shortest decimal that round-trips to the same double ('.' separator,
// locale-independent).
std::string shortest(double value);

// Fixed-point with the given number of decimals, locale-independent.
std::string fixed(double value, int decimals);

}  // namespace sawom::fmt

#pragma once

// Integer-order Bessel functions of the first kind used by the mode-area and
// mode-synthesis code. Power series (extended precision) below
// kSeriesCrossover, Hankel asymptotic expansion above it.

namespace sawom::bessel {

inline constexpr double kSeriesCrossover = 17.0;

double j0(double x);
double j1(double x);

// n-th positive zero of J0, n >= 1. McMahon estimate refined by Newton.
// Throws ValidationError for n == 0.
double j0_zero(unsigned n);

}  // namespace sawom::bessel

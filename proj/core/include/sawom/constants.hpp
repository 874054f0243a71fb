#pragma once

#include <numbers>

namespace sawom::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// CODATA 2018 exact / recommended values, SI.
inline constexpr double speed_of_light = 299'792'458.0;   // m/s
inline constexpr double planck = 6.62607015e-34;          // J s
inline constexpr double hbar = 1.054571817e-34;           // J s

}  // namespace sawom::constants

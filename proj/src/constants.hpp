#pragma once

#include <numbers>

namespace mwg::constants {

// CODATA values, fixed to ten significant digits.
inline constexpr double hbar = 1.054571817e-34;   // J s
inline constexpr double h = 6.62607015e-34;       // J s
inline constexpr double c = 299792458.0;          // m/s
inline constexpr double eps0 = 8.854187813e-12;   // F/m
inline constexpr double amu = 1.660539067e-27;    // kg

inline constexpr double pi = std::numbers::pi;

}  // namespace mwg::constants

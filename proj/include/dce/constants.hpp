#pragma once

#include <numbers>

namespace dce::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double k_boltzmann = 1.380649e-23;   // J/K
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m

}  // namespace dce::constants

#pragma once

#include <complex>

namespace nri {

using complex = std::complex<double>;

// Physical constants, CODATA 2018, SI units.
inline constexpr double hbar = 1.054571817e-34;   // J s
inline constexpr double eps0 = 8.8541878128e-12;  // F/m
inline constexpr double mu0  = 1.25663706212e-6;  // H/m
inline constexpr double c0   = 2.99792458e8;      // m/s

inline constexpr double pi = 3.14159265358979323846;

}  // namespace nri

#pragma once

#include <complex>

namespace scatrec {

inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kPi = 3.14159265358979323846;

// Bessel functions of the first/second kind, order zero, for x > 0.
// Chebyshev expansions fitted to better than 1e-14 relative on [0,8] and
// on [8, inf) through the modulus/phase form.
double bessel_j0(double x);
double bessel_y0(double x);

// H0^(1)(z) = J0(z) + i Y0(z); throws std::domain_error for z <= 0.
std::complex<double> hankel_h0_first_kind(double z);

} // namespace scatrec

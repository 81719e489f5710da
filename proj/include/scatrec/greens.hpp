#pragma once

#include "scatrec/errors.hpp"
#include "scatrec/geometry.hpp"
#include "scatrec/special.hpp"

#include <complex>

namespace scatrec {

using Complex = std::complex<double>;

struct Wavenumber {
    double k = 0.0; // > 0, inverse length
};

// Validity bound for the singular-cell expansion and the midpoint forward
// quadrature; k*h must stay below this.
inline constexpr double kKhLimit = 0.1;

// Issues the k*h diagnostic; throws AccuracyError when policy is `fail`.
void check_kh(double k, double h, KhPolicy policy);

// xi_2 = (3+ln 2)/2 - pi/4 - gamma + i pi/2 (2D singular-cell constant).
Complex singular_constant_2d();

// xi_3 = ln(26 + 15 sqrt(3)) - pi/2, the cube integral of 1/|r| divided by h^2.
double singular_constant_3d();

// Free-space Green's function. 2D: (i/4) H0^(1)(k|r-r'|); 3D: e^{ik R}/(4 pi R).
// Coincident points are a singularity; callers must route the containing
// cell through singular_cell_integral instead.
Complex greens(int dim, const Point& r, const Point& r_prime, Wavenumber k);

// Closed-form integral of exp(-i k rhat2.r) eta(r) G(r, r1) over the cell
// containing the source, k-power prefactor included so the value adds
// directly into the amplitude cell sum:
//   2D: eta e^{-ik rhat2.rt} k^{3/2} h^2 (xi2 - ln(hk/2)) / (2 pi)
//   3D: eta e^{-ik rhat2.rt} k^2 h^2 (xi3 + i k h) / (4 pi)
// `phase_point` is the cell center rt.
Complex singular_cell_integral(int dim, double h, Wavenumber k, double eta_tilde,
                               const Point& phase_point, const Point& detector,
                               KhPolicy policy = KhPolicy::warn);

// Cell-averaged self-interaction used on the coupled-dipole diagonal and as
// the incident-field value inside the source cell (the singular integral
// with the phase and eta factors removed, divided by the cell measure
// where noted by the caller):
//   2D: h^2 (xi2 - ln(hk/2)) / (2 pi);  3D: h^2 (xi3 + i k h) / (4 pi).
Complex self_cell_green_integral(int dim, double h, Wavenumber k);

} // namespace scatrec

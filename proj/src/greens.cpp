#include "scatrec/greens.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace scatrec {

void check_kh(double k, double h, KhPolicy policy) {
    if (k * h < kKhLimit) return;
    if (policy == KhPolicy::fail)
        throw AccuracyError("k*h = " + std::to_string(k * h) +
                            " violates the k*h << 1 discretization bound");
    static bool warned = false;
    if (!warned) {
        std::fprintf(stderr, "warning: k*h = %.4g >= %.2g, cell quadrature accuracy degrades\n",
                     k * h, kKhLimit);
        warned = true;
    }
}

Complex singular_constant_2d() {
    return {0.5 * (3.0 + std::log(2.0)) - 0.25 * kPi - kEulerGamma, 0.5 * kPi};
}

double singular_constant_3d() { return std::log(26.0 + 15.0 * std::sqrt(3.0)) - 0.5 * kPi; }

Complex greens(int dim, const Point& r, const Point& r_prime, Wavenumber k) {
    const double R = distance(r, r_prime);
    if (R <= 0.0)
        throw std::domain_error("greens: coincident points; use the singular-cell path");
    if (dim == 2) return Complex(0.0, 0.25) * hankel_h0_first_kind(k.k * R);
    if (dim == 3) return std::exp(Complex(0.0, k.k * R)) / (4.0 * kPi * R);
    throw std::invalid_argument("greens: dim must be 2 or 3");
}

Complex singular_cell_integral(int dim, double h, Wavenumber k, double eta_tilde,
                               const Point& phase_point, const Point& detector, KhPolicy policy) {
    check_kh(k.k, h, policy);
    const Complex phase = std::exp(Complex(0.0, -k.k * Point::dot(detector, phase_point)));
    if (dim == 2) {
        Complex cell = singular_constant_2d() - std::log(0.5 * h * k.k);
        return eta_tilde * phase * std::pow(k.k, 1.5) * h * h * cell / (2.0 * kPi);
    }
    if (dim == 3) {
        Complex zeta = h * h * (singular_constant_3d() + Complex(0.0, k.k * h));
        return eta_tilde * phase * k.k * k.k * zeta / (4.0 * kPi);
    }
    throw std::invalid_argument("singular_cell_integral: dim must be 2 or 3");
}

Complex self_cell_green_integral(int dim, double h, Wavenumber k) {
    if (dim == 2)
        return h * h * (singular_constant_2d() - std::log(0.5 * h * k.k)) / (2.0 * kPi);
    if (dim == 3)
        return h * h * (singular_constant_3d() + Complex(0.0, k.k * h)) / (4.0 * kPi);
    throw std::invalid_argument("self_cell_green_integral: dim must be 2 or 3");
}

} // namespace scatrec

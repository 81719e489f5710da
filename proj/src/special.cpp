#include "scatrec/special.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace scatrec {
namespace {

// Chebyshev series on [-1,1], Clenshaw recurrence. c[0] is halved.
double clenshaw(const double* c, std::size_t n, double t) {
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t i = n - 1; i > 0; --i) {
        double b0 = 2.0 * t * b1 - b2 + c[i];
        b2 = b1;
        b1 = b0;
    }
    return t * b1 - b2 + 0.5 * c[0];
}

// J0 on [0,8], variable t = 2(x/8)^2 - 1.
const double J0_cheb[] = {
    0.3154559429497802391,      -0.008723442352852221291,  0.2651786132033368099,
    -0.3700949938726497790,     0.1580671023320972613,     -0.03489376941140888516,
    0.004819180069467604497,    -0.0004606261662062750475, 0.00003246032882100508081,
    -1.761946907762150749e-6,   7.608163592418781867e-8,   -2.679253530557672898e-9,
    7.848696314479464417e-11,   -1.943834686737016571e-12, 4.125320595634373933e-14,
    -7.588508125447546338e-16,  1.221851587396141103e-17,
};

// Even part of Y0 on [0,8]: Y0(x) - (2/pi)(ln(x/2)+gamma) J0(x).
const double Y0B_cheb[] = {
    -0.04301022289931510122,   -0.2751181330435187915,    0.1986056347025541556,
    0.2342527461090218021,     -0.1656359817136504131,    0.04462137954066928217,
    -0.006932286291523188294,  0.0007191174037523030937,  -0.00005392507972293938550,
    3.076493288108484295e-6,   -1.384571812300865375e-7,  5.051054369090245486e-9,
    -1.525828504279970693e-10, 3.882867469443679396e-12,  -8.442874824652624860e-14,
    1.587483422179426743e-15,  -2.607610220121480825e-17,
};

// Asymptotic amplitude P0(x) for x >= 8, variable t = 2(8/x)^2 - 1.
const double P0_cheb[] = {
    1.998920698695037331,      -0.0005365220468132117425, 3.075184787519474622e-6,
    -5.170594537606097701e-8,  1.630646463515138309e-9,   -7.864091377237069999e-11,
    5.168262387349192462e-12,  -4.304578869925391222e-13, 4.326595743154940564e-14,
    -5.069034095935236077e-15, 6.748072215733873703e-16,  -1.001151372346778581e-16,
    1.630591923374418411e-17,  -2.880866169482869677e-18,
};

// x * Q0(x) for x >= 8, same variable.
const double Q0z_cheb[] = {
    -0.2488936736853921456,    0.0005470815954089319680,  -5.931598728848517812e-6,
    1.437796579837519343e-7,   -5.817532749493055984e-9,  3.376097523734990755e-10,
    -2.565397936797307796e-11, 2.404916100281365049e-12,  -2.669062548257941598e-13,
    3.404180032196368898e-14,  -4.879944105312040006e-15, 7.729703176242605343e-16,
    -1.334885217150251592e-16, 2.486595238939048866e-17,  -4.952892629886450935e-18,
    1.047315897377450347e-18,
};

} // namespace

double bessel_j0(double x) {
    x = std::abs(x);
    if (x <= 8.0) {
        double t = 2.0 * (x / 8.0) * (x / 8.0) - 1.0;
        return clenshaw(J0_cheb, sizeof(J0_cheb) / sizeof(double), t);
    }
    double w = 8.0 / x;
    double t = 2.0 * w * w - 1.0;
    double p = clenshaw(P0_cheb, sizeof(P0_cheb) / sizeof(double), t);
    double qz = clenshaw(Q0z_cheb, sizeof(Q0z_cheb) / sizeof(double), t);
    double chi = x - 0.25 * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - (qz / x) * std::sin(chi));
}

double bessel_y0(double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_y0: requires x > 0");
    if (x <= 8.0) {
        double t = 2.0 * (x / 8.0) * (x / 8.0) - 1.0;
        double j0 = clenshaw(J0_cheb, sizeof(J0_cheb) / sizeof(double), t);
        double b = clenshaw(Y0B_cheb, sizeof(Y0B_cheb) / sizeof(double), t);
        return (2.0 / kPi) * (std::log(0.5 * x) + kEulerGamma) * j0 + b;
    }
    double w = 8.0 / x;
    double t = 2.0 * w * w - 1.0;
    double p = clenshaw(P0_cheb, sizeof(P0_cheb) / sizeof(double), t);
    double qz = clenshaw(Q0z_cheb, sizeof(Q0z_cheb) / sizeof(double), t);
    double chi = x - 0.25 * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (p * std::sin(chi) + (qz / x) * std::cos(chi));
}

std::complex<double> hankel_h0_first_kind(double z) {
    if (!(z > 0.0)) throw std::domain_error("hankel_h0_first_kind: requires z > 0");
    return {bessel_j0(z), bessel_y0(z)};
}

} // namespace scatrec

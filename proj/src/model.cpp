#include "qsc/model.hpp"

#include <cmath>
#include <stdexcept>

namespace qsc {
namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string(what) + " must be finite");
    }
}

constexpr double kInvSqrt2 = 0.70710678118654752440;

} // namespace

CMat interaction_hamiltonian(double g1, double g2) {
    require_finite(g1, "g1");
    require_finite(g2, "g2");
    CMat h(3);
    h(0, 1) = g1;
    h(1, 0) = g1;
    h(1, 2) = g2;
    h(2, 1) = g2;
    return h;
}

Eigensystem eigensystem(double g1, double g2) {
    require_finite(g1, "g1");
    require_finite(g2, "g2");
    if (g1 == 0.0 && g2 == 0.0) {
        throw std::invalid_argument("degenerate coupling: g1 = g2 = 0 leaves the mixing angle undefined");
    }

    Eigensystem sys;
    const double g = std::hypot(g1, g2);
    sys.theta = std::atan2(g1, g2);
    sys.energy_plus = g;
    sys.energy_dark = 0.0;
    sys.energy_minus = -g;

    const double sin_t = g1 / g;
    const double cos_t = g2 / g;

    sys.plus = CVec(3);
    sys.plus[0] = kInvSqrt2 * sin_t;
    sys.plus[1] = kInvSqrt2;
    sys.plus[2] = kInvSqrt2 * cos_t;

    sys.dark = CVec(3);
    sys.dark[0] = -cos_t;
    sys.dark[2] = sin_t;

    sys.minus = CVec(3);
    sys.minus[0] = kInvSqrt2 * sin_t;
    sys.minus[1] = -kInvSqrt2;
    sys.minus[2] = kInvSqrt2 * cos_t;

    return sys;
}

CMat adiabatic_frame(double theta) {
    require_finite(theta, "theta");
    const double sin_t = std::sin(theta);
    const double cos_t = std::cos(theta);

    CMat u(3);
    u(0, 0) = kInvSqrt2 * sin_t;
    u(0, 1) = kInvSqrt2;
    u(0, 2) = kInvSqrt2 * cos_t;
    u(1, 0) = -cos_t;
    u(1, 2) = sin_t;
    u(2, 0) = kInvSqrt2 * sin_t;
    u(2, 1) = -kInvSqrt2;
    u(2, 2) = kInvSqrt2 * cos_t;
    return u;
}

const Spin1Operators& spin1_operators() {
    static const Spin1Operators ops = [] {
        Spin1Operators o{CMat(3), CMat(3), CMat(3)};
        o.mx(0, 1) = -kInvSqrt2;
        o.mx(1, 0) = -kInvSqrt2;
        o.mx(1, 2) = kInvSqrt2;
        o.mx(2, 1) = kInvSqrt2;

        o.my(0, 1) = cplx{0.0, kInvSqrt2};
        o.my(1, 0) = cplx{0.0, -kInvSqrt2};
        o.my(1, 2) = cplx{0.0, -kInvSqrt2};
        o.my(2, 1) = cplx{0.0, kInvSqrt2};

        o.mz(0, 0) = 1.0;
        o.mz(2, 2) = -1.0;
        return o;
    }();
    return ops;
}

CMat adiabatic_hamiltonian(double g, double theta_dot) {
    require_finite(g, "g");
    require_finite(theta_dot, "theta_dot");
    const Spin1Operators& m = spin1_operators();
    CMat h = m.mz;
    h *= cplx{g, 0.0};
    CMat leak = m.my;
    leak *= cplx{theta_dot, 0.0};
    return h - leak;
}

CMat embed_open(const CMat& h3) {
    if (h3.dim() != 3) throw std::invalid_argument("embed_open: expected a 3x3 operator");
    CMat h4(4);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) h4(r + 1, c + 1) = h3(r, c);
    return h4;
}

} // namespace qsc

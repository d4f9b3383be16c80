#include "qsc/pulse.hpp"

#include <cmath>
#include <stdexcept>

#include "qsc/model.hpp"

namespace qsc {

namespace {

void require_range(const PulseParams& p, double t, const char* who) {
    // integrators land on tau +/- a few ulp; give them slack, reject real misuse
    const double slack = 1e-9 * p.tau;
    if (!(t >= -slack && t <= p.tau + slack))
        throw std::out_of_range(std::string(who) + ": t outside [0, tau]");
}

// everything below is the forward-direction closed-form calculus; the
// reverse direction swaps (g1, g2) which flips the sign of theta_dot,
// theta_ddot, mu, mu_dot and leaves g, g_dot, f untouched
struct Calculus {
    double g1, g2, g, theta;
    double theta_dot, theta_ddot, g_dot;
    double f, f_dot;
};

Calculus evaluate(const PulseParams& p, double t) {
    const double x = M_PI * t / (2.0 * p.tau);
    const double w = M_PI / (2.0 * p.tau);
    const double sx = std::sin(x), cx = std::cos(x);
    const double s2 = std::sin(2.0 * x), c2 = std::cos(2.0 * x);
    const double s4 = std::sin(4.0 * x);
    const double D = sx * sx * sx * sx + cx * cx * cx * cx;

    Calculus c;
    double ga = p.g0 * sx * sx;
    double gb = p.g0 * cx * cx;
    const double sign = (p.direction == Direction::ForwardA1toA2) ? 1.0 : -1.0;
    if (p.direction == Direction::ReverseA2toA1) std::swap(ga, gb);
    c.g1 = ga;
    c.g2 = gb;
    c.g = p.g0 * std::sqrt(D);
    c.theta = std::atan2(ga, gb);
    c.theta_dot = sign * w * s2 / D;
    c.theta_ddot = sign * w * w * (2.0 * c2 * D + s2 * s4) / (D * D);
    c.g_dot = -p.g0 * w * s4 / (2.0 * std::sqrt(D));
    c.f = 1.0 + p.squeeze * s2 * s2 * s2 * s2;
    c.f_dot = 4.0 * p.squeeze * (M_PI / p.tau) * s2 * s2 * s2 * c2;
    return c;
}

ControlFields controls_from(const Calculus& c, const PulseParams& p) {
    const double fg = c.f * c.g;
    const double r = c.theta_dot / fg;
    const double r_dot =
        (c.theta_ddot * fg - c.theta_dot * (c.f_dot * c.g + c.f * c.g_dot)) / (fg * fg);
    ControlFields cf;
    cf.f = c.f;
    cf.mu = std::atan(r);
    cf.mu_dot = r_dot / (1.0 + r * r);
    cf.g_x = p.zero_gx ? 0.0 : cf.mu_dot;
    cf.g_z = (c.f - 1.0) * c.g;
    return cf;
}

ModifiedCouplings modified_from(const Calculus& c, const ControlFields& cf, double t) {
    ModifiedCouplings m;
    m.t = t;
    const double st = std::sin(c.theta), ct = std::cos(c.theta);
    const double radial = c.g + cf.g_z;
    m.g1_mod = radial * st + cf.g_x * ct;
    m.g2_mod = radial * ct - cf.g_x * st;
    return m;
}

} // namespace

void PulseParams::validate() const {
    if (!(g0 > 0.0) || !std::isfinite(g0))
        throw std::invalid_argument("PulseParams: g0 must be positive and finite");
    if (!(tau > 0.0) || !std::isfinite(tau))
        throw std::invalid_argument("PulseParams: tau must be positive and finite");
    if (!(squeeze >= 0.0) || !std::isfinite(squeeze))
        throw std::invalid_argument("PulseParams: squeeze must be >= 0 and finite");
}

CouplingSample base_couplings(const PulseParams& p, double t) {
    p.validate();
    require_range(p, t, "base_couplings");
    const Calculus c = evaluate(p, t);
    CouplingSample s;
    s.t = t;
    s.g1 = c.g1;
    s.g2 = c.g2;
    s.g = c.g;
    s.theta = c.theta;
    s.theta_dot = c.theta_dot;
    return s;
}

double auxiliary_f(double squeeze, double tau, double t) {
    const double s = std::sin(M_PI * t / tau);
    return 1.0 + squeeze * s * s * s * s;
}

double auxiliary_f_dot(double squeeze, double tau, double t) {
    const double s = std::sin(M_PI * t / tau);
    const double c = std::cos(M_PI * t / tau);
    return 4.0 * squeeze * (M_PI / tau) * s * s * s * c;
}

ControlFields control_fields(const PulseParams& p, double t) {
    p.validate();
    require_range(p, t, "control_fields");
    return controls_from(evaluate(p, t), p);
}

ModifiedCouplings modified_couplings(const PulseParams& p, double t) {
    p.validate();
    require_range(p, t, "modified_couplings");
    const Calculus c = evaluate(p, t);
    if (p.variant == Variant::Adiabatic) {
        ModifiedCouplings m;
        m.t = t;
        m.g1_mod = c.g1;
        m.g2_mod = c.g2;
        return m;
    }
    return modified_from(c, controls_from(c, p), t);
}

CMat satd_correction(const PulseParams& p, double t) {
    p.validate();
    require_range(p, t, "satd_correction");
    const Calculus c = evaluate(p, t);
    CMat h(3);
    h(0, 2) = cplx(0.0, c.theta_dot);
    h(2, 0) = cplx(0.0, -c.theta_dot);
    return h;
}

CMat dressed_hamiltonian(const PulseParams& p, double t) {
    const ModifiedCouplings m = modified_couplings(p, t);
    return interaction_hamiltonian(m.g1_mod, m.g2_mod);
}

double dressed_frame_residual(const PulseParams& p, const std::vector<double>& grid) {
    p.validate();
    if (grid.size() < 100)
        throw std::invalid_argument("dressed_frame_residual: grid needs >= 100 points");

    const Spin1Operators ops = spin1_operators();
    const double eps = 1e-6 * p.tau;

    // W(t) = exp(i mu M_x) U(theta); the pulse formulas are entire in t,
    // so the stencil may step outside [0, tau]
    auto frame = [&](double t) {
        const Calculus c = evaluate(p, t);
        const ControlFields cf = controls_from(c, p);
        CMat gen = ops.mx;
        gen *= cplx(0.0, cf.mu);
        return expm(gen) * adiabatic_frame(c.theta);
    };

    double worst = 0.0;
    for (double t : grid) {
        require_range(p, t, "dressed_frame_residual");
        const CMat w = frame(t);
        const CMat wp = frame(t + eps);
        const CMat wm = frame(t - eps);

        CMat wdot(3);
        for (int r = 0; r < 3; ++r)
            for (int cc = 0; cc < 3; ++cc)
                wdot(r, cc) = (wp(r, cc) - wm(r, cc)) / (2.0 * eps);

        const CMat wd = w.adjoint();
        CMat hd = w * dressed_hamiltonian(p, t) * wd;
        CMat inertial = wdot * wd;
        inertial *= cplx(0.0, 1.0);
        hd += inertial;

        // dressed-dark row is index 1 in the {+, d, -} ordering
        for (int b : {0, 2}) {
            worst = std::max(worst, std::abs(hd(1, b)));
            worst = std::max(worst, std::abs(hd(b, 1)));
        }
    }
    return worst;
}

} // namespace qsc

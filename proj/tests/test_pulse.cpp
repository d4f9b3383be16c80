#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qsc/dynamics.hpp"
#include "qsc/protocols.hpp"
#include "qsc/pulse.hpp"

using namespace qsc;

namespace {

PulseParams dressed(double tau, double squeeze) {
    PulseParams p;
    p.tau = tau;
    p.squeeze = squeeze;
    p.variant = Variant::Dressed;
    return p;
}

} // namespace

TEST_CASE("vanilla couplings hit the documented endpoint values") {
    const PulseParams p = dressed(kReferenceT0, 0.0);
    const double tau = p.tau;

    const CouplingSample start = base_couplings(p, 0.0);
    CHECK(start.g1 == 0.0);
    CHECK(start.g2 == 1.0);
    CHECK(start.theta == 0.0);
    CHECK(start.theta_dot == 0.0);
    CHECK(start.g == 1.0);

    const CouplingSample mid = base_couplings(p, tau / 2.0);
    CHECK(mid.g1 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(mid.g2 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(mid.theta == doctest::Approx(M_PI / 4.0).epsilon(1e-14));
    CHECK(mid.theta_dot == doctest::Approx(M_PI / tau).epsilon(1e-13));
    CHECK(mid.g == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

    const CouplingSample end = base_couplings(p, tau);
    CHECK(end.g1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(end.g2) < 1e-30);
    CHECK(end.theta == doctest::Approx(M_PI / 2.0).epsilon(1e-14));
    CHECK(std::abs(end.theta_dot) < 1e-15);
}

TEST_CASE("closed-form derivatives match central differences") {
    for (const PulseParams& p :
         {dressed(kReferenceT0, 0.0), dressed(kReferenceT0, 0.4), dressed(2 * kReferenceT0, 0.85)}) {
        const double tau = p.tau;
        const double h = 1e-5 * tau;
        for (int i = 1; i < 200; ++i) {
            const double t = tau * (0.03 + 0.94 * i / 200.0);

            const double theta_fd =
                (base_couplings(p, t + h).theta - base_couplings(p, t - h).theta) / (2 * h);
            CHECK(std::abs(base_couplings(p, t).theta_dot - theta_fd) < 1e-7);

            const double mu_fd =
                (control_fields(p, t + h).mu - control_fields(p, t - h).mu) / (2 * h);
            CHECK(std::abs(control_fields(p, t).mu_dot - mu_fd) < 1e-7);

            const double f_fd =
                (auxiliary_f(p.squeeze, tau, t + h) - auxiliary_f(p.squeeze, tau, t - h)) /
                (2 * h);
            CHECK(std::abs(auxiliary_f_dot(p.squeeze, tau, t) - f_fd) < 1e-7);
        }
    }
}

TEST_CASE("auxiliary function evaluates its closed form") {
    const double tau = kReferenceT0;
    CHECK(auxiliary_f(0.85, tau, 0.0) == 1.0);
    CHECK(auxiliary_f(0.85, tau, tau / 2.0) == doctest::Approx(1.85).epsilon(1e-14));
    CHECK(auxiliary_f(0.85, tau, tau / 4.0) == doctest::Approx(1.0 + 0.85 / 4.0).epsilon(1e-14));
    CHECK(auxiliary_f(0.69, tau, tau / 4.0) == doctest::Approx(1.1725).epsilon(1e-14));
    CHECK(std::abs(auxiliary_f(0.85, tau, tau)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(auxiliary_f_dot(0.85, tau, tau / 2.0) == doctest::Approx(0.0).epsilon(1e-12));

    const PulseParams p = dressed(tau, 0.85);
    for (double t : {0.1 * tau, 0.37 * tau, 0.72 * tau}) {
        CHECK(std::abs(control_fields(p, t).f - auxiliary_f(0.85, tau, t)) < 1e-14);
    }
}

TEST_CASE("control fields start from the analytic boundary values") {
    for (double squeeze : {0.0, 0.85}) {
        for (double tau : {kReferenceT0, 2 * kReferenceT0}) {
            const PulseParams p = dressed(tau, squeeze);
            const ControlFields cf = control_fields(p, 0.0);
            CHECK(cf.mu == 0.0);
            CHECK(cf.g_z == 0.0);
            const double expected = M_PI * M_PI / (2.0 * tau * tau);
            CHECK(cf.mu_dot == doctest::Approx(expected).epsilon(1e-13));
            CHECK(cf.g_x == cf.mu_dot);
        }
    }
}

TEST_CASE("modified couplings pin the boundaries and mirror in time") {
    for (double squeeze : {0.0, 0.85}) {
        const PulseParams p = dressed(kReferenceT0, squeeze);
        const double tau = p.tau;

        CHECK(modified_couplings(p, 0.0).g2_mod == 1.0);
        CHECK(std::abs(modified_couplings(p, tau).g1_mod - 1.0) < 1e-14);

        const double boundary = M_PI * M_PI / (2.0 * tau * tau);
        CHECK(modified_couplings(p, 0.0).g1_mod == doctest::Approx(boundary).epsilon(1e-12));
        CHECK(modified_couplings(p, tau).g2_mod == doctest::Approx(boundary).epsilon(1e-12));

        for (int i = 0; i <= 100; ++i) {
            const double t = tau * (i / 100.0);
            const ModifiedCouplings fwd = modified_couplings(p, t);
            const ModifiedCouplings mirrored = modified_couplings(p, tau - t);
            CHECK(std::abs(mirrored.g1_mod - fwd.g2_mod) < 1e-12);
        }
    }
}

TEST_CASE("reverse direction swaps the coupling roles") {
    PulseParams fwd = dressed(kReferenceT0, 0.3);
    PulseParams rev = fwd;
    rev.direction = Direction::ReverseA2toA1;

    for (double t : {0.0, 0.21 * fwd.tau, 0.5 * fwd.tau, 0.83 * fwd.tau, fwd.tau}) {
        const CouplingSample a = base_couplings(fwd, t);
        const CouplingSample b = base_couplings(rev, t);
        CHECK(b.g1 == a.g2);
        CHECK(b.g2 == a.g1);
        CHECK(b.g == a.g);
        CHECK(b.theta_dot == -a.theta_dot);

        const ControlFields ca = control_fields(fwd, t);
        const ControlFields cb = control_fields(rev, t);
        CHECK(cb.mu == -ca.mu);
        CHECK(cb.mu_dot == -ca.mu_dot);
        CHECK(cb.g_z == ca.g_z);
        CHECK(cb.f == ca.f);

        const ModifiedCouplings ma = modified_couplings(fwd, t);
        const ModifiedCouplings mb = modified_couplings(rev, t);
        CHECK(std::abs(mb.g1_mod - ma.g2_mod) < 1e-13);
        CHECK(std::abs(mb.g2_mod - ma.g1_mod) < 1e-13);
    }
}

TEST_CASE("adiabatic variant leaves the couplings unmodified") {
    PulseParams p = dressed(kReferenceT0, 0.0);
    p.variant = Variant::Adiabatic;
    for (double t : {0.0, 0.25 * p.tau, 0.6 * p.tau, p.tau}) {
        const CouplingSample base = base_couplings(p, t);
        const ModifiedCouplings m = modified_couplings(p, t);
        CHECK(m.g1_mod == base.g1);
        CHECK(m.g2_mod == base.g2);
    }

    // the dressed variant genuinely reshapes the pulse away from the ends
    const PulseParams d = dressed(kReferenceT0, 0.0);
    const double t = 0.25 * d.tau;
    CHECK(std::abs(modified_couplings(d, t).g1_mod - base_couplings(d, t).g1) > 1e-3);
}

TEST_CASE("satd correction is the anti-hermitian-free counterdiabatic term") {
    const PulseParams p = dressed(kReferenceT0, 0.0);
    const CMat mid = satd_correction(p, p.tau / 2.0);
    CHECK(std::abs(mid(0, 2) - cplx(0.0, M_PI / p.tau)) < 1e-14);
    CHECK(std::abs(mid(2, 0) - cplx(0.0, -M_PI / p.tau)) < 1e-14);
    CHECK(mid(0, 1) == cplx(0.0, 0.0));
    CHECK(mid(1, 2) == cplx(0.0, 0.0));
    CHECK(hermiticity_error(mid) == 0.0);
    CHECK(satd_correction(p, 0.0).max_abs() == 0.0);
}

TEST_CASE("zero_gx drops the transverse control only") {
    PulseParams p = dressed(kReferenceT0, 0.85);
    p.zero_gx = true;
    const double t = 0.31 * p.tau;
    const ControlFields cf = control_fields(p, t);
    CHECK(cf.g_x == 0.0);
    CHECK(cf.mu_dot != 0.0);

    PulseParams full = p;
    full.zero_gx = false;
    CHECK(control_fields(full, t).g_x == control_fields(full, t).mu_dot);
    CHECK(cf.g_z == control_fields(full, t).g_z);
}

TEST_CASE("dressed frame decouples the dark row") {
    for (double squeeze : {0.0, 0.85}) {
        const PulseParams p = dressed(kReferenceT0, squeeze);
        const double residual = dressed_frame_residual(p, uniform_grid(0.0, p.tau, 300));
        CHECK(residual < 1e-6);
    }
}

TEST_CASE("dropping g_x breaks the dressed-frame decoupling") {
    PulseParams p = dressed(kReferenceT0, 0.0);
    p.zero_gx = true;
    const double residual = dressed_frame_residual(p, uniform_grid(0.0, p.tau, 300));
    CHECK(residual > 1e-3);
}

TEST_CASE("pulse parameter validation rejects bad inputs") {
    PulseParams p;
    p.g0 = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = PulseParams{};
    p.tau = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = PulseParams{};
    p.squeeze = -0.1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = PulseParams{};
    p.tau = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("evaluation outside the pulse window throws") {
    const PulseParams p = dressed(kReferenceT0, 0.0);
    CHECK_THROWS_AS(base_couplings(p, -0.01 * p.tau), std::out_of_range);
    CHECK_THROWS_AS(base_couplings(p, 1.01 * p.tau), std::out_of_range);
    CHECK_THROWS_AS(control_fields(p, 1.01 * p.tau), std::out_of_range);
    CHECK_THROWS_AS(modified_couplings(p, -0.01 * p.tau), std::out_of_range);
    CHECK_THROWS_AS(satd_correction(p, 1.01 * p.tau), std::out_of_range);

    // integrator endpoints sit within a few ulp of tau and must pass
    CHECK_NOTHROW(base_couplings(p, p.tau * (1.0 + 1e-12)));
}

TEST_CASE("dressed frame residual validates its grid") {
    const PulseParams p = dressed(kReferenceT0, 0.0);
    CHECK_THROWS_AS(dressed_frame_residual(p, uniform_grid(0.0, p.tau, 50)),
                    std::invalid_argument);
    std::vector<double> outside = uniform_grid(0.0, 2.0 * p.tau, 200);
    CHECK_THROWS_AS(dressed_frame_residual(p, outside), std::out_of_range);
}

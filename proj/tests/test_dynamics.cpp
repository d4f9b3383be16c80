#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qsc/dynamics.hpp"
#include "qsc/errors.hpp"
#include "qsc/model.hpp"
#include "qsc/protocols.hpp"

using namespace qsc;

namespace {

CMat basis_density(int k) {
    CMat rho(4);
    rho(k, k) = 1.0;
    return rho;
}

CMat random_density() {
    // fixed, handwritten positive matrix: v v^dag mixed with the identity
    CVec v(4);
    v[0] = cplx(0.3, 0.1);
    v[1] = cplx(-0.5, 0.2);
    v[2] = cplx(0.4, -0.6);
    v[3] = cplx(0.1, 0.25);
    CMat rho(4);
    double n2 = 0.0;
    for (int i = 0; i < 4; ++i) n2 += std::norm(v[i]);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) rho(r, c) = v[r] * std::conj(v[c]) / n2 * 0.7;
    for (int i = 0; i < 4; ++i) rho(i, i) += 0.075;
    return rho;
}

} // namespace

TEST_CASE("uniform grid covers the interval with equal steps") {
    const auto g = uniform_grid(0.0, 2.0, 8);
    REQUIRE(g.size() == 9);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 2.0);
    for (std::size_t i = 1; i < g.size(); ++i)
        CHECK(g[i] - g[i - 1] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK_THROWS_AS(uniform_grid(0.0, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(uniform_grid(1.0, 1.0, 5), std::invalid_argument);
}

TEST_CASE("lindblad rhs is trace-free and hermiticity-preserving") {
    const CMat h = embed_open(interaction_hamiltonian(0.7, -0.4));
    const CMat rho = random_density();
    const DecayRates rates{0.02, 0.001, 0.005};
    const CMat d = lindblad_rhs(rho, h, rates);
    CHECK(std::abs(d.trace()) < 1e-15);
    CHECK(hermiticity_error(d) < 1e-15);
}

TEST_CASE("lindblad rhs reduces to the von neumann commutator at zero rates") {
    const CMat h = embed_open(interaction_hamiltonian(1.0, 0.3));
    const CMat rho = random_density();
    const CMat d = lindblad_rhs(rho, h, DecayRates{});
    CMat expected = h * rho - rho * h;
    expected *= cplx(0.0, -1.0);
    CHECK((d - expected).max_abs() < 1e-15);
}

TEST_CASE("lindblad rhs routes each decay channel to the vacuum") {
    const CMat h(4); // free evolution
    for (int k = 1; k < 4; ++k) {
        DecayRates rates;
        if (k == 1) rates.gamma1 = 0.3;
        if (k == 2) rates.kappa = 0.3;
        if (k == 3) rates.gamma2 = 0.3;
        const CMat d = lindblad_rhs(basis_density(k), h, rates);
        CHECK(d(0, 0).real() == doctest::Approx(0.3).epsilon(1e-14));
        CHECK(d(k, k).real() == doctest::Approx(-0.3).epsilon(1e-14));
    }
    CHECK_THROWS_AS(lindblad_rhs(CMat(3), CMat(3), DecayRates{}), std::invalid_argument);
}

TEST_CASE("free decay follows the exponential law") {
    const double gamma = 0.08;
    const Hamiltonian h = [](double) { return CMat(4); };
    const DecayRates rates{gamma, 0.0, 0.0};
    const double t_end = 30.0;
    const Trajectory traj =
        integrate_density(h, basis_density(1), rates, uniform_grid(0.0, t_end, 3000),
                          Mode::Optical);

    const double expected = std::exp(-gamma * t_end);
    CHECK(std::abs(traj.pops.back().a1 - expected) < 1e-10);
    CHECK(std::abs(traj.pops.back().vac - (1.0 - expected)) < 1e-10);
    CHECK(traj.max_trace_drift < 1e-12);
    CHECK(traj.min_eigenvalue > -1e-12);
}

TEST_CASE("two-mode rabi oscillation matches the cosine law") {
    const double g = 0.9, t_end = 5.0;
    const Hamiltonian h = [g](double) { return interaction_hamiltonian(g, 0.0); };
    CVec psi0(3);
    psi0[0] = 1.0;
    const Trajectory traj = integrate_state(h, psi0, uniform_grid(0.0, t_end, 4000));

    const double c = std::cos(g * t_end);
    const double s = std::sin(g * t_end);
    CHECK(std::abs(traj.pops.back().a1 - c * c) < 1e-10);
    CHECK(std::abs(traj.pops.back().bm - s * s) < 1e-10);
    CHECK(std::abs(traj.pops.back().a2) < 1e-20);
    CHECK(traj.max_norm_drift < 1e-10);
}

TEST_CASE("rk4 error shrinks sixteenfold per step halving") {
    ProtocolSpec spec;
    spec.pulse.tau = kReferenceT0;
    spec.pulse.variant = Variant::Dressed;
    spec.rates = reference_rates(1.0);
    const Hamiltonian h = assemble_protocol_open(spec);

    // worst deviation over the trajectory at shared sample times; the final
    // sample alone is useless here, its error changes sign between grids
    const int ref_steps = 4096;
    const Trajectory ref = integrate_density(h, basis_density(1), spec.rates,
                                             uniform_grid(0.0, spec.pulse.tau, ref_steps));
    auto traj_error = [&](int steps) {
        const Trajectory t = integrate_density(h, basis_density(1), spec.rates,
                                               uniform_grid(0.0, spec.pulse.tau, steps));
        const int stride = ref_steps / steps;
        double worst = 0.0;
        for (int i = 0; i <= steps; ++i)
            worst = std::max(worst, std::abs(t.fidelity[i] - ref.fidelity[i * stride]));
        return worst;
    };
    const double factor = traj_error(128) / traj_error(256);
    CHECK(factor > 12.0);
    CHECK(factor < 20.0);
}

TEST_CASE("density and state integration agree on closed dynamics") {
    ProtocolSpec spec;
    spec.pulse.tau = kReferenceT0;
    spec.pulse.variant = Variant::Dressed;
    const Hamiltonian h3 = assemble_protocol(spec);
    const Hamiltonian h4 = assemble_protocol_open(spec);
    const auto grid = uniform_grid(0.0, spec.pulse.tau, 2000);

    CVec psi0(3);
    psi0[0] = 1.0;
    const Trajectory closed = integrate_state(h3, psi0, grid);
    const Trajectory open = integrate_density(h4, basis_density(1), DecayRates{}, grid);

    REQUIRE(closed.pops.size() == open.pops.size());
    for (std::size_t i = 0; i < grid.size(); i += 100) {
        CHECK(std::abs(closed.pops[i].a1 - open.pops[i].a1) < 1e-8);
        CHECK(std::abs(closed.pops[i].bm - open.pops[i].bm) < 1e-8);
        CHECK(std::abs(closed.pops[i].a2 - open.pops[i].a2) < 1e-8);
    }
    CHECK(std::abs(closed.fidelity.back() - open.fidelity.back()) < 1e-8);
    CHECK(open.min_purity > 1.0 - 1e-8);
    CHECK(open.max_purity < 1.0 + 1e-8);
    CHECK(open.pops.back().vac < 1e-12);
}

TEST_CASE("populations and fidelity read the right diagonal entries") {
    const CMat quarter = [] {
        CMat rho(4);
        for (int i = 0; i < 4; ++i) rho(i, i) = 0.25;
        return rho;
    }();
    const Populations p = populations(quarter);
    CHECK(p.vac == 0.25);
    CHECK(p.a1 == 0.25);
    CHECK(p.bm == 0.25);
    CHECK(p.a2 == 0.25);
    CHECK(p.sum() == 1.0);
    CHECK(fidelity(quarter, Mode::Microwave) == 0.25);
    CHECK(fidelity(quarter, Mode::Optical) == 0.25);

    CVec psi(3);
    psi[2] = cplx(0.0, 1.0);
    CHECK(fidelity(psi, Mode::Microwave) == 1.0);
    CHECK(populations(psi).a2 == 1.0);
}

TEST_CASE("targets must be cavity modes and dimensions must line up") {
    CHECK_THROWS_AS(fidelity(CMat::identity(4), Mode::Mechanical), std::invalid_argument);
    CHECK_THROWS_AS(fidelity(CMat::identity(4), Mode::Vacuum), std::invalid_argument);
    CHECK_THROWS_AS(fidelity(CMat::identity(3), Mode::Microwave), std::invalid_argument);
    CHECK_THROWS_AS(populations(CMat::identity(3)), std::invalid_argument);

    const Hamiltonian h = [](double) { return CMat(4); };
    CHECK_THROWS_AS(integrate_density(h, CMat(3), DecayRates{}, uniform_grid(0.0, 1.0, 10)),
                    std::invalid_argument);
    CHECK_THROWS_AS(integrate_density(h, CMat(4), DecayRates{}, {0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        integrate_density(h, CMat(4), DecayRates{}, std::vector<double>{0.0, 1.0, 0.5}),
        std::invalid_argument);
    CHECK_THROWS_AS(integrate_density(h, CMat(4), DecayRates{-0.1, 0.0, 0.0},
                                      uniform_grid(0.0, 1.0, 10)),
                    std::invalid_argument);

    CHECK_THROWS_AS(integrate_state(h, CVec(3), uniform_grid(0.0, 1.0, 10)),
                    std::invalid_argument); // 4x4 hamiltonian against a dim-3 state
}

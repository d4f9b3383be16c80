#include "qsc/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "qsc/errors.hpp"
#include "qsc/kernels.hpp"

namespace qsc {

namespace {

constexpr int kSpan = CMat::kStride * CMat::kStride; // full padded block

double frobenius_sq(const CMat& m) {
    double s = 0.0;
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c) s += std::norm(m(r, c));
    return s;
}

void check_target(Mode target) {
    if (target != Mode::Optical && target != Mode::Microwave)
        throw std::invalid_argument("fidelity: target must be a cavity mode (a1 or a2)");
}

} // namespace

void DecayRates::validate() const {
    for (double r : {gamma1, gamma2, kappa}) {
        if (!(r >= 0.0) || !std::isfinite(r))
            throw std::invalid_argument("DecayRates: rates must be non-negative and finite");
    }
}

std::vector<double> uniform_grid(double t0, double t1, int steps) {
    if (steps < 1) throw std::invalid_argument("uniform_grid: steps must be >= 1");
    if (!(t1 > t0)) throw std::invalid_argument("uniform_grid: need t1 > t0");
    std::vector<double> g(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i)
        g[static_cast<std::size_t>(i)] = t0 + (t1 - t0) * (static_cast<double>(i) / steps);
    return g;
}

CMat lindblad_rhs(const CMat& rho, const CMat& h, const DecayRates& rates) {
    if (rho.dim() != 4 || h.dim() != 4)
        throw std::invalid_argument("lindblad_rhs: open system is 4x4");

    const CMat hr = h * rho;
    const CMat rh = rho * h;
    CMat out(4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            out(r, c) = cplx(0.0, -1.0) * (hr(r, c) - rh(r, c));

    const double rate_of[4] = {0.0, rates.gamma1, rates.kappa, rates.gamma2};
    for (int k = 1; k < 4; ++k) {
        const double gk = rate_of[k];
        if (gk == 0.0) continue;
        out(0, 0) += gk * rho(k, k);
        for (int c = 0; c < 4; ++c) out(k, c) -= 0.5 * gk * rho(k, c);
        for (int r = 0; r < 4; ++r) out(r, k) -= 0.5 * gk * rho(r, k);
    }
    return out;
}

Trajectory integrate_density(const Hamiltonian& h, const CMat& rho0,
                             const DecayRates& rates, const std::vector<double>& grid,
                             Mode target) {
    rates.validate();
    check_target(target);
    if (rho0.dim() != 4) throw std::invalid_argument("integrate_density: rho0 must be 4x4");
    if (grid.size() < 2) throw std::invalid_argument("integrate_density: grid needs >= 2 points");

    const auto& ks = kernels::active();
    const double trace0 = rho0.trace().real();

    Trajectory traj;
    traj.open = true;
    traj.t = grid;
    traj.pops.reserve(grid.size());
    traj.fidelity.reserve(grid.size());
    traj.min_eigenvalue = 1.0;

    CMat rho = rho0;
    auto record = [&](const CMat& m) {
        traj.pops.push_back(populations(m));
        traj.fidelity.push_back(fidelity(m, target));
        const double drift = std::abs(m.trace().real() - trace0);
        traj.max_trace_drift = std::max(traj.max_trace_drift, drift);
        traj.max_hermiticity_drift =
            std::max(traj.max_hermiticity_drift, hermiticity_error(m));
        traj.min_eigenvalue = std::min(traj.min_eigenvalue, hermitian_eigenvalues(m)[0]);
        const double purity = frobenius_sq(m);
        traj.min_purity = std::min(traj.min_purity, purity);
        traj.max_purity = std::max(traj.max_purity, purity);
        if (drift > 1e-6)
            throw numerical_error("integrate_density: diverged, trace drift " +
                                  std::to_string(drift));
    };
    record(rho);

    CMat k1(4), k2(4), k3(4), k4(4), stage(4);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double t = grid[i];
        const double step = grid[i + 1] - t;
        if (!(step > 0.0))
            throw std::invalid_argument("integrate_density: grid must be strictly increasing");

        const CMat h1 = h(t);
        const CMat h2 = h(t + 0.5 * step);
        const CMat h3 = h(t + step);

        k1 = lindblad_rhs(rho, h1, rates);
        ks.axpy(stage.data(), rho.data(), 0.5 * step, k1.data(), kSpan);
        k2 = lindblad_rhs(stage, h2, rates);
        ks.axpy(stage.data(), rho.data(), 0.5 * step, k2.data(), kSpan);
        k3 = lindblad_rhs(stage, h2, rates);
        ks.axpy(stage.data(), rho.data(), step, k3.data(), kSpan);
        k4 = lindblad_rhs(stage, h3, rates);
        ks.rk4_combine(rho.data(), rho.data(), step, k1.data(), k2.data(), k3.data(),
                       k4.data(), kSpan);
        record(rho);
    }

    traj.final_density = rho;
    return traj;
}

Trajectory integrate_state(const Hamiltonian& h, const CVec& psi0,
                           const std::vector<double>& grid, Mode target) {
    check_target(target);
    if (psi0.dim() != 3) throw std::invalid_argument("integrate_state: psi0 must be dim 3");
    if (grid.size() < 2) throw std::invalid_argument("integrate_state: grid needs >= 2 points");

    const auto& ks = kernels::active();
    const double norm0 = psi0.norm();

    Trajectory traj;
    traj.open = false;
    traj.t = grid;
    traj.pops.reserve(grid.size());
    traj.fidelity.reserve(grid.size());

    CVec psi = psi0;
    auto record = [&](const CVec& v) {
        traj.pops.push_back(populations(v));
        traj.fidelity.push_back(fidelity(v, target));
        const double drift = std::abs(v.norm() - norm0);
        traj.max_norm_drift = std::max(traj.max_norm_drift, drift);
        if (drift > 1e-6)
            throw numerical_error("integrate_state: diverged, norm drift " +
                                  std::to_string(drift));
    };
    record(psi);

    auto rhs = [](const CMat& ham, const CVec& v) {
        CVec out = ham * v;
        for (int i = 0; i < out.dim(); ++i) out[i] *= cplx(0.0, -1.0);
        return out;
    };

    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double t = grid[i];
        const double step = grid[i + 1] - t;
        if (!(step > 0.0))
            throw std::invalid_argument("integrate_state: grid must be strictly increasing");

        const CMat h1 = h(t);
        const CMat h2 = h(t + 0.5 * step);
        const CMat h3 = h(t + step);

        const CVec k1 = rhs(h1, psi);
        CVec stage(3);
        ks.axpy(&stage[0], &psi[0], 0.5 * step, &k1[0], 3);
        const CVec k2 = rhs(h2, stage);
        ks.axpy(&stage[0], &psi[0], 0.5 * step, &k2[0], 3);
        const CVec k3 = rhs(h2, stage);
        ks.axpy(&stage[0], &psi[0], step, &k3[0], 3);
        const CVec k4 = rhs(h3, stage);
        ks.rk4_combine(&psi[0], &psi[0], step, &k1[0], &k2[0], &k3[0], &k4[0], 3);
        record(psi);
    }

    traj.final_state = psi;
    return traj;
}

Populations populations(const CMat& rho) {
    if (rho.dim() != 4) throw std::invalid_argument("populations: density matrix must be 4x4");
    Populations p;
    p.vac = rho(0, 0).real();
    p.a1 = rho(1, 1).real();
    p.bm = rho(2, 2).real();
    p.a2 = rho(3, 3).real();
    return p;
}

Populations populations(const CVec& psi) {
    if (psi.dim() != 3) throw std::invalid_argument("populations: state vector must be dim 3");
    Populations p;
    p.a1 = std::norm(psi[0]);
    p.bm = std::norm(psi[1]);
    p.a2 = std::norm(psi[2]);
    return p;
}

double fidelity(const CMat& rho, Mode target) {
    check_target(target);
    if (rho.dim() != 4) throw std::invalid_argument("fidelity: density matrix must be 4x4");
    return rho(static_cast<int>(target), static_cast<int>(target)).real();
}

double fidelity(const CVec& psi, Mode target) {
    check_target(target);
    if (psi.dim() != 3) throw std::invalid_argument("fidelity: state vector must be dim 3");
    return std::norm(psi[closed_index(target)]);
}

} // namespace qsc

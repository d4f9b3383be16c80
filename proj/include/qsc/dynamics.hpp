#pragma once

#include <functional>
#include <vector>

#include "qsc/mat.hpp"
#include "qsc/model.hpp"

namespace qsc {

// Zero-temperature Markovian decay channels. Jump operators are
// |Vacuum><k| for k in {a1, b_m, a2}; no thermal re-excitation.
struct DecayRates {
    double gamma1 = 0.0; // optical cavity a1
    double gamma2 = 0.0; // microwave cavity a2
    double kappa = 0.0;  // mechanical oscillator b_m

    void validate() const; // throws std::invalid_argument
    bool any() const { return gamma1 > 0.0 || gamma2 > 0.0 || kappa > 0.0; }
};

struct Populations {
    double vac = 0.0;
    double a1 = 0.0;
    double bm = 0.0;
    double a2 = 0.0;
    double sum() const { return vac + a1 + bm + a2; }
};

using Hamiltonian = std::function<CMat(double)>;

struct Trajectory {
    std::vector<double> t;
    std::vector<Populations> pops;
    std::vector<double> fidelity; // target population per sample
    bool open = false;
    CMat final_density; // open runs, dim 4
    CVec final_state;   // closed runs, dim 3

    // integration hygiene, tracked at every sample
    double max_trace_drift = 0.0;
    double max_hermiticity_drift = 0.0;
    double min_eigenvalue = 0.0;
    double min_purity = 1.0;
    double max_purity = 1.0;
    double max_norm_drift = 0.0;
};

// steps uniform RK4 intervals over [t0, t1]; returns steps + 1 sample times.
std::vector<double> uniform_grid(double t0, double t1, int steps);

// d(rho)/dt = -i[H, rho] + sum_k gamma_k (rho_kk |0><0| - {|k><k|, rho}/2).
// Trace-free and Hermiticity-preserving by construction.
CMat lindblad_rhs(const CMat& rho, const CMat& h, const DecayRates& rates);

// Classic fixed-step RK4 on the master equation over the given monotone grid.
// No renormalization; a trace drift beyond 1e-6 throws numerical_error.
Trajectory integrate_density(const Hamiltonian& h, const CMat& rho0,
                             const DecayRates& rates, const std::vector<double>& grid,
                             Mode target = Mode::Microwave);

// Closed-system fast path: RK4 on -i H(t) psi. Norm drift beyond 1e-6 throws.
Trajectory integrate_state(const Hamiltonian& h, const CVec& psi0,
                           const std::vector<double>& grid, Mode target = Mode::Microwave);

Populations populations(const CMat& rho);
Populations populations(const CVec& psi);

// Target-mode population; target must be a cavity mode (a1 or a2).
double fidelity(const CMat& rho, Mode target);
double fidelity(const CVec& psi, Mode target);

} // namespace qsc

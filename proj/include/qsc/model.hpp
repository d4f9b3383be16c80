#pragma once

#include "qsc/mat.hpp"

namespace qsc {

// Basis ordering for open-system objects. Closed-system (3x3) objects drop
// the vacuum sink and use {optical, mechanical, microwave} at indices 0..2.
enum class Mode : int { Vacuum = 0, Optical = 1, Mechanical = 2, Microwave = 3 };

constexpr int closed_index(Mode m) { return static_cast<int>(m) - 1; }

// Lambda-topology interaction Hamiltonian in the single-excitation subspace:
// coupling g1 between the optical and mechanical modes, g2 between the
// mechanical and microwave modes, no direct optical-microwave term. Couplings
// are angular frequencies and may be negative (modified pulses swing through
// zero mid-conversion).
CMat interaction_hamiltonian(double g1, double g2);

struct Eigensystem {
    double energy_plus;    // +sqrt(g1^2 + g2^2)
    double energy_dark;    // 0
    double energy_minus;   // -sqrt(g1^2 + g2^2)
    CVec plus;             // bright state at +g
    CVec dark;             // zero-energy state with no mechanical component
    CVec minus;            // bright state at -g
    double theta;          // mixing angle, tan(theta) = g1/g2
};

// Instantaneous eigensystem of interaction_hamiltonian(g1, g2).
// Throws std::invalid_argument when g1 = g2 = 0 (mixing angle undefined).
Eigensystem eigensystem(double g1, double g2);

// Frame unitary whose rows are <+|, <d|, <-| expressed in the bare basis.
CMat adiabatic_frame(double theta);

struct Spin1Operators {
    CMat mx, my, mz;   // in the {+, d, -} ordering
};

const Spin1Operators& spin1_operators();

// Hamiltonian in the adiabatic frame: g * Mz - theta_dot * My.
CMat adiabatic_hamiltonian(double g, double theta_dot);

// Embed a 3x3 single-excitation operator into the 4-dimensional open-system
// space, leaving the vacuum row and column zero.
CMat embed_open(const CMat& h3);

} // namespace qsc

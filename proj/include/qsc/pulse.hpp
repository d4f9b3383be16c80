#pragma once

#include <vector>

#include "qsc/mat.hpp"

namespace qsc {

enum class Variant { Adiabatic, SATD, Dressed };
enum class Direction { ForwardA1toA2, ReverseA2toA1 };

struct PulseParams {
    double g0 = 1.0;      // peak coupling, angular frequency
    double tau = 1.0;     // conversion time
    double squeeze = 0.0; // A in f(t) = 1 + A sin^4(pi t / tau)
    Direction direction = Direction::ForwardA1toA2;
    Variant variant = Variant::Dressed;
    bool zero_gx = false; // debug: drop the g_x control term (negative control)

    void validate() const; // throws std::invalid_argument
};

struct CouplingSample {
    double t = 0.0;
    double g1 = 0.0;
    double g2 = 0.0;
    double g = 0.0;         // sqrt(g1^2 + g2^2)
    double theta = 0.0;     // rad
    double theta_dot = 0.0; // rad/time
};

struct ControlFields {
    double mu = 0.0;     // rad
    double mu_dot = 0.0; // rad/time
    double g_x = 0.0;
    double g_z = 0.0;
    double f = 1.0;
};

struct ModifiedCouplings {
    double t = 0.0;
    double g1_mod = 0.0;
    double g2_mod = 0.0;
};

// g1 = g0 sin^2(pi t/2tau), g2 = g0 cos^2(pi t/2tau), swapped for the
// reverse direction. theta_dot is the closed form, not a finite difference.
CouplingSample base_couplings(const PulseParams& p, double t);

double auxiliary_f(double squeeze, double tau, double t);
double auxiliary_f_dot(double squeeze, double tau, double t);

// mu = arctan(theta_dot / (f g)), g_x = mu_dot (analytic chain rule),
// g_z = (f - 1) g. Endpoints are exact: theta_dot(0) = 0 gives mu = 0.
ControlFields control_fields(const PulseParams& p, double t);

// Eq.-of-motion couplings of the dressed scheme:
//   g~1 = (g + g_z) sin(theta) + g_x cos(theta)
//   g~2 = (g + g_z) cos(theta) - g_x sin(theta)
// For the Adiabatic variant returns the vanilla couplings unchanged.
ModifiedCouplings modified_couplings(const PulseParams& p, double t);

// Transitionless correction: +i theta_dot at (a1, a2), -i theta_dot at (a2, a1).
CMat satd_correction(const PulseParams& p, double t);

// interaction_hamiltonian(g~1, g~2); lambda topology, no direct a1-a2 coupling.
CMat dressed_hamiltonian(const PulseParams& p, double t);

// Builds V(t) = exp(i mu M_x), assembles the dressed-frame Hamiltonian
//   H_d = W H~ W^dag + i W_dot W^dag,  W = V U,
// with W_dot by central differences, and returns the largest magnitude
// coupling the dressed-dark row to the bright rows over the grid.
// Grid must have at least 100 points inside [0, tau].
double dressed_frame_residual(const PulseParams& p, const std::vector<double>& grid);

} // namespace qsc

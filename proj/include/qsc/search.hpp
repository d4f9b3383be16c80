#pragma once

#include <utility>

#include "qsc/pulse.hpp"

namespace qsc {

// Feasibility bookkeeping for the amplitude cap max|g~i(t)| <= g0. The cap is
// saturated at the boundaries (g~2(0) = g~1(tau) = g0 for the vanilla family),
// so feasibility means the interior peaks do not rise above that value.
struct ConstraintReport {
    double tau = 0.0;
    double squeeze = 0.0;
    double peak_g1_mod = 0.0;
    double peak_g2_mod = 0.0;
    bool binding = false;  // max peak within 1e-3 (relative) of g0
    bool feasible = false; // max peak <= g0 * (1 + 1e-6)
};

// Maxima of |g~1| and |g~2| on a 1e4-point uniform grid, each refined by a
// golden-section search around the grid argmax to 1e-6 * tau in time.
std::pair<double, double> peak_modified_amplitude(const PulseParams& params);

ConstraintReport constraint_report(const PulseParams& params);

// Bisection on tau of [peak amplitude - g0] over [1/g0, 20/g0] at A = 0;
// returns the feasible end of the final bracket (width <= tol).
double find_minimal_time(double g0, double tol);

// Bisection on A of [peak amplitude - g0] over [0, 10] at fixed tau.
double find_max_squeeze(double tau, double tol, double g0 = 1.0);

} // namespace qsc

#include "qsc/search.hpp"

#include <cmath>
#include <stdexcept>

#include "qsc/errors.hpp"

namespace qsc {

namespace {

constexpr int kGridPoints = 10000;
constexpr double kFeasibleSlack = 1e-6; // relative; see ConstraintReport

double golden_max(const PulseParams& p, bool first, double lo, double hi) {
    auto value = [&](double t) {
        const ModifiedCouplings m = modified_couplings(p, t);
        return std::abs(first ? m.g1_mod : m.g2_mod);
    };
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = value(c), fd = value(d);
    while (b - a > 1e-6 * p.tau) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = value(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = value(d);
        }
    }
    return std::max(fc, fd);
}

double peak_one(const PulseParams& p, bool first) {
    double best = 0.0;
    int best_i = 0;
    for (int i = 0; i <= kGridPoints; ++i) {
        const double t = p.tau * (static_cast<double>(i) / kGridPoints);
        const ModifiedCouplings m = modified_couplings(p, t);
        const double v = std::abs(first ? m.g1_mod : m.g2_mod);
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    const double h = p.tau / kGridPoints;
    const double lo = std::max(0.0, (best_i - 1) * h);
    const double hi = std::min(p.tau, (best_i + 1) * h);
    return std::max(best, golden_max(p, first, lo, hi));
}

bool feasible(const PulseParams& p) {
    const auto [p1, p2] = peak_modified_amplitude(p);
    return std::max(p1, p2) <= p.g0 * (1.0 + kFeasibleSlack);
}

PulseParams dressed_params(double g0, double tau, double squeeze) {
    PulseParams p;
    p.g0 = g0;
    p.tau = tau;
    p.squeeze = squeeze;
    p.variant = Variant::Dressed;
    return p;
}

} // namespace

std::pair<double, double> peak_modified_amplitude(const PulseParams& params) {
    params.validate();
    return {peak_one(params, true), peak_one(params, false)};
}

ConstraintReport constraint_report(const PulseParams& params) {
    const auto [p1, p2] = peak_modified_amplitude(params);
    ConstraintReport r;
    r.tau = params.tau;
    r.squeeze = params.squeeze;
    r.peak_g1_mod = p1;
    r.peak_g2_mod = p2;
    const double peak = std::max(p1, p2);
    r.feasible = peak <= params.g0 * (1.0 + kFeasibleSlack);
    r.binding = std::abs(peak - params.g0) <= 1e-3 * params.g0;
    return r;
}

double find_minimal_time(double g0, double tol) {
    if (!(g0 > 0.0) || !std::isfinite(g0))
        throw std::invalid_argument("find_minimal_time: g0 must be positive");
    if (!(tol >= 1e-4 / g0))
        throw std::invalid_argument("find_minimal_time: tol must be >= 1e-4/g0");

    double lo = 1.0 / g0, hi = 20.0 / g0;
    if (feasible(dressed_params(g0, lo, 0.0)) || !feasible(dressed_params(g0, hi, 0.0)))
        throw numerical_error("find_minimal_time: no feasibility change across [1/g0, 20/g0]");

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (feasible(dressed_params(g0, mid, 0.0)))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

double find_max_squeeze(double tau, double tol, double g0) {
    if (!(g0 > 0.0) || !std::isfinite(g0))
        throw std::invalid_argument("find_max_squeeze: g0 must be positive");
    if (!(tau > 0.0) || !std::isfinite(tau))
        throw std::invalid_argument("find_max_squeeze: tau must be positive");
    if (!(tol >= 1e-3))
        throw std::invalid_argument("find_max_squeeze: tol must be >= 1e-3");

    double lo = 0.0, hi = 10.0;
    if (!feasible(dressed_params(g0, tau, lo)))
        throw numerical_error("find_max_squeeze: infeasible already at A = 0 (tau below minimal time)");
    if (feasible(dressed_params(g0, tau, hi)))
        throw numerical_error("find_max_squeeze: still feasible at A = 10, bracket exhausted");

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (feasible(dressed_params(g0, tau, mid)))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

} // namespace qsc

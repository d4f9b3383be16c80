#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qsc/errors.hpp"
#include "qsc/protocols.hpp"
#include "qsc/search.hpp"

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

TEST_CASE("minimal conversion time lands at the reference value") {
    const double t0 = find_minimal_time(1.0, 1e-4);
    CHECK(std::abs(t0 - kReferenceT0) < 0.05);

    const ConstraintReport report = constraint_report(dressed(t0, 0.0));
    CHECK(report.feasible);
    CHECK(report.binding);
    CHECK(report.tau == t0);
    CHECK(report.squeeze == 0.0);
}

TEST_CASE("below the minimal time the amplitude cap is violated") {
    const ConstraintReport report = constraint_report(dressed(2.5, 0.0));
    CHECK_FALSE(report.feasible);
    CHECK_FALSE(report.binding);
    CHECK(std::max(report.peak_g1_mod, report.peak_g2_mod) > 1.0 + 1e-3);
}

TEST_CASE("maximal squeeze values match the benchmarks") {
    const double a1 = find_max_squeeze(kReferenceT0, 1e-3);
    CHECK(std::abs(a1 - 0.85) < 0.02);

    const double a2 = find_max_squeeze(2.0 * kReferenceT0, 1e-3);
    CHECK(std::abs(a2 - 0.69) < 0.02);

    // longer pulses leave less squeeze headroom, not more
    CHECK(a1 > a2);

    CHECK(constraint_report(dressed(kReferenceT0, a1)).feasible);
    CHECK_FALSE(constraint_report(dressed(kReferenceT0, a1 + 0.05)).feasible);
}

TEST_CASE("vanilla adiabatic pulses peak exactly at the cap") {
    PulseParams p = dressed(kReferenceT0, 0.0);
    p.variant = Variant::Adiabatic;
    const auto [p1, p2] = peak_modified_amplitude(p);
    CHECK(p1 == 1.0);
    CHECK(p2 == 1.0);
}

TEST_CASE("slow dressed pulses stay pinned to the boundary amplitude") {
    const ConstraintReport report = constraint_report(dressed(10.0 * kReferenceT0, 0.0));
    CHECK(report.feasible);
    CHECK(report.binding);
    CHECK(report.peak_g1_mod >= 1.0);
    CHECK(report.peak_g1_mod <= 1.0 + 1e-6);
    CHECK(report.peak_g2_mod >= 1.0);
    CHECK(report.peak_g2_mod <= 1.0 + 1e-6);
}

TEST_CASE("doubling the amplitude cap roughly halves the minimal time") {
    // at tau = 1.7325 the interior peak reaches twice the boundary value
    const auto [p1, p2] = peak_modified_amplitude(dressed(1.7325, 0.0));
    const double peak = std::max(p1, p2);
    CHECK(std::abs(peak - 2.0) < 0.01);
    CHECK_FALSE(constraint_report(dressed(1.7325, 0.0)).feasible);
}

TEST_CASE("peak amplitude is monotone in tau and squeeze") {
    double previous = std::numeric_limits<double>::infinity();
    for (double tau : {1.6, 2.0, 2.4, 2.8, 3.2, 3.6, 4.0}) {
        const auto [p1, p2] = peak_modified_amplitude(dressed(tau, 0.0));
        const double peak = std::max(p1, p2);
        CHECK(peak <= previous + 1e-9);
        previous = peak;
    }

    previous = 0.0;
    for (double a : {0.0, 0.3, 0.6, 0.9, 1.2, 2.0}) {
        const auto [p1, p2] = peak_modified_amplitude(dressed(kReferenceT0, a));
        const double peak = std::max(p1, p2);
        CHECK(peak >= previous - 1e-9);
        previous = peak;
    }
    CHECK(previous > 1.01); // far past the feasible squeeze range
}

TEST_CASE("search input validation") {
    CHECK_THROWS_AS(find_minimal_time(1.0, 1e-5), std::invalid_argument);
    CHECK_THROWS_AS(find_minimal_time(0.0, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(find_max_squeeze(kReferenceT0, 1e-4), std::invalid_argument);
    CHECK_THROWS_AS(find_max_squeeze(-1.0, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(find_max_squeeze(kReferenceT0, 1e-3, -1.0), std::invalid_argument);
}

TEST_CASE("squeeze search reports an exhausted bracket below the minimal time") {
    CHECK_THROWS_AS(find_max_squeeze(0.5 * kReferenceT0, 1e-3), numerical_error);
}

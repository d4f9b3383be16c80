#include "qsc/mat.hpp"

#include "qsc/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace qsc {

CMat operator*(const CMat& a, const CMat& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("CMat: dimension mismatch");
    CMat out(a.dim());
    kernels::active().matmul(out.data(), a.data(), b.data(), a.dim());
    return out;
}

double hermiticity_error(const CMat& a) {
    double m = 0.0;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c)
            m = std::max(m, std::abs(a(r, c) - std::conj(a(c, r))));
    return m;
}

double unitarity_error(const CMat& u) {
    CMat prod = u * u.adjoint();
    for (int i = 0; i < u.dim(); ++i) prod(i, i) -= 1.0;
    return prod.max_abs();
}

CMat expm(const CMat& a) {
    // Scale so the Taylor series converges rapidly, then square back.
    int squarings = 0;
    double norm = a.max_abs() * a.dim();
    while (norm > 0.5 && squarings < 40) {
        norm *= 0.5;
        ++squarings;
    }
    CMat scaled = a;
    scaled *= cplx{std::ldexp(1.0, -squarings), 0.0};

    CMat result = CMat::identity(a.dim());
    CMat term = CMat::identity(a.dim());
    for (int k = 1; k <= 20; ++k) {
        term = term * scaled;
        term *= cplx{1.0 / k, 0.0};
        result += term;
        if (term.max_abs() < 1e-18) break;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

std::array<double, 4> hermitian_eigenvalues(const CMat& a) {
    CMat w = a;
    const int n = w.dim();
    const double scale = std::max(w.max_abs(), 1e-300);

    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(w(p, q)));
        if (off < 1e-15 * scale) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = w(p, q);
                const double mag = std::abs(apq);
                if (mag < 1e-18 * scale) continue;

                const double app = w(p, p).real();
                const double aqq = w(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx phase = apq / mag;

                CMat rot = CMat::identity(n);
                rot(p, p) = c;
                rot(q, q) = c;
                rot(p, q) = s * phase;
                rot(q, p) = -s * std::conj(phase);
                w = rot.adjoint() * w * rot;
            }
        }
    }

    std::array<double, 4> ev{};
    for (int i = 0; i < n; ++i) ev[i] = w(i, i).real();
    std::sort(ev.begin(), ev.begin() + n);
    return ev;
}

} // namespace qsc

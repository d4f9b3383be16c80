#include "qsc/kernels.hpp"

namespace qsc::kernels {
namespace {

constexpr int kStride = 4;

void matmul_scalar(cplx* c, const cplx* a, const cplx* b, int dim) {
    for (int i = 0; i < dim; ++i) {
        cplx row[4] = {};
        for (int k = 0; k < dim; ++k) {
            const cplx aik = a[i * kStride + k];
            for (int j = 0; j < dim; ++j) {
                row[j] += aik * b[k * kStride + j];
            }
        }
        for (int j = 0; j < dim; ++j) c[i * kStride + j] = row[j];
    }
}

void axpy_scalar(cplx* y, const cplx* x, double s, const cplx* k, int n) {
    for (int i = 0; i < n; ++i) y[i] = x[i] + s * k[i];
}

void rk4_combine_scalar(cplx* y, const cplx* x, double h, const cplx* k1,
                        const cplx* k2, const cplx* k3, const cplx* k4, int n) {
    const double w = h / 6.0;
    for (int i = 0; i < n; ++i) {
        y[i] = x[i] + w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

} // namespace

const KernelSet& scalar_kernels() {
    static const KernelSet set{"scalar", matmul_scalar, axpy_scalar, rk4_combine_scalar};
    return set;
}

} // namespace qsc::kernels

#pragma once

#include <complex>
#include <string_view>

namespace qsc::kernels {

using cplx = std::complex<double>;

// Arithmetic kernels for the propagation inner loops. All matrix arguments
// are row-major complex with a fixed row stride of 4 and 32-byte alignment
// (the CMat layout); vector arguments are contiguous arrays of n complex
// values. A scalar reference implementation always exists; wider variants
// are selected at runtime from CPU capabilities and must agree with the
// reference to floating-point rounding (see tests/test_kernels.cpp).
struct KernelSet {
    const char* name;

    // c = a * b for dim x dim matrices (dim is 3 or 4; stride fixed at 4).
    void (*matmul)(cplx* c, const cplx* a, const cplx* b, int dim);

    // y_i = x_i + s * k_i over n complex entries, s real.
    void (*axpy)(cplx* y, const cplx* x, double s, const cplx* k, int n);

    // y_i = x_i + (h/6) * (k1_i + 2 k2_i + 2 k3_i + k4_i) over n entries.
    void (*rk4_combine)(cplx* y, const cplx* x, double h, const cplx* k1,
                        const cplx* k2, const cplx* k3, const cplx* k4, int n);
};

const KernelSet& scalar_kernels();

#if defined(__x86_64__) || defined(_M_X64)
#define QSC_HAVE_AVX2_KERNELS 1
const KernelSet& avx2_kernels();
bool avx2_supported();
#endif

// Active set: best supported variant unless overridden by select() or the
// QSC_KERNEL environment variable ("auto", "scalar", "avx2").
const KernelSet& active();

// Returns false (and leaves the active set unchanged) for unknown names or
// variants the CPU cannot run.
bool select(std::string_view name);

std::string_view active_name();

} // namespace qsc::kernels

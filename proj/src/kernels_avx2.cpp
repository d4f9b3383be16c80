#if defined(__x86_64__) || defined(_M_X64)

#include "qsc/kernels.hpp"

#include <immintrin.h>

namespace qsc::kernels {
namespace {

constexpr int kStride = 4;

// One complex multiply-accumulate lane pair: acc += a * b for a broadcast
// complex scalar a against a register of two interleaved complex values.
inline __m256d cplx_madd(__m256d are, __m256d aim, __m256d b, __m256d acc) {
    const __m256d bswap = _mm256_permute_pd(b, 0x5);
    const __m256d prod = _mm256_fmaddsub_pd(are, b, _mm256_mul_pd(aim, bswap));
    return _mm256_add_pd(acc, prod);
}

// Full padded 4x4 block product. Rows of dim-3 operands carry zero padding,
// so processing the whole block is exact for both dimensions.
void matmul_avx2(cplx* c, const cplx* a, const cplx* b, int /*dim*/) {
    const double* ad = reinterpret_cast<const double*>(a);
    const double* bd = reinterpret_cast<const double*>(b);
    double* cd = reinterpret_cast<double*>(c);

    for (int i = 0; i < 4; ++i) {
        __m256d lo = _mm256_setzero_pd();
        __m256d hi = _mm256_setzero_pd();
        for (int k = 0; k < 4; ++k) {
            const __m256d are = _mm256_broadcast_sd(ad + (i * kStride + k) * 2);
            const __m256d aim = _mm256_broadcast_sd(ad + (i * kStride + k) * 2 + 1);
            const __m256d b_lo = _mm256_loadu_pd(bd + k * kStride * 2);
            const __m256d b_hi = _mm256_loadu_pd(bd + k * kStride * 2 + 4);
            lo = cplx_madd(are, aim, b_lo, lo);
            hi = cplx_madd(are, aim, b_hi, hi);
        }
        _mm256_storeu_pd(cd + i * kStride * 2, lo);
        _mm256_storeu_pd(cd + i * kStride * 2 + 4, hi);
    }
}

void axpy_avx2(cplx* y, const cplx* x, double s, const cplx* k, int n) {
    const double* xd = reinterpret_cast<const double*>(x);
    const double* kd = reinterpret_cast<const double*>(k);
    double* yd = reinterpret_cast<double*>(y);
    const int nd = 2 * n;
    const __m256d sv = _mm256_set1_pd(s);

    int i = 0;
    for (; i + 4 <= nd; i += 4) {
        const __m256d xv = _mm256_loadu_pd(xd + i);
        const __m256d kv = _mm256_loadu_pd(kd + i);
        _mm256_storeu_pd(yd + i, _mm256_fmadd_pd(sv, kv, xv));
    }
    for (; i < nd; ++i) yd[i] = xd[i] + s * kd[i];
}

void rk4_combine_avx2(cplx* y, const cplx* x, double h, const cplx* k1,
                      const cplx* k2, const cplx* k3, const cplx* k4, int n) {
    const double* xd = reinterpret_cast<const double*>(x);
    const double* k1d = reinterpret_cast<const double*>(k1);
    const double* k2d = reinterpret_cast<const double*>(k2);
    const double* k3d = reinterpret_cast<const double*>(k3);
    const double* k4d = reinterpret_cast<const double*>(k4);
    double* yd = reinterpret_cast<double*>(y);
    const int nd = 2 * n;
    const __m256d wv = _mm256_set1_pd(h / 6.0);
    const __m256d two = _mm256_set1_pd(2.0);

    int i = 0;
    for (; i + 4 <= nd; i += 4) {
        const __m256d mid = _mm256_add_pd(_mm256_loadu_pd(k2d + i), _mm256_loadu_pd(k3d + i));
        __m256d sum = _mm256_add_pd(_mm256_loadu_pd(k1d + i), _mm256_loadu_pd(k4d + i));
        sum = _mm256_fmadd_pd(two, mid, sum);
        _mm256_storeu_pd(yd + i, _mm256_fmadd_pd(wv, sum, _mm256_loadu_pd(xd + i)));
    }
    const double w = h / 6.0;
    for (; i < nd; ++i) {
        yd[i] = xd[i] + w * (k1d[i] + 2.0 * (k2d[i] + k3d[i]) + k4d[i]);
    }
}

} // namespace

const KernelSet& avx2_kernels() {
    static const KernelSet set{"avx2", matmul_avx2, axpy_avx2, rk4_combine_avx2};
    return set;
}

bool avx2_supported() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

} // namespace qsc::kernels

#endif // x86-64

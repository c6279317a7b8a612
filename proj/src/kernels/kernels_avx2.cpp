// AVX2+FMA kernel variants. Compiled with -mavx2 -mfma on x86_64 only; only
// reached after a runtime cpuid check, so the binary stays safe on older CPUs.
#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "kernels/simd_kernels.hpp"

namespace fractal_spectra {
namespace kernels {
namespace avx2 {

void axpy(std::size_t n, double a, const double* x, double* y) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256d y0 = _mm256_loadu_pd(y + i);
        __m256d y1 = _mm256_loadu_pd(y + i + 4);
        y0 = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), y0);
        y1 = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i + 4), y1);
        _mm256_storeu_pd(y + i, y0);
        _mm256_storeu_pd(y + i + 4, y1);
    }
    for (; i < n; ++i)
        y[i] += a * x[i];
}

double dot(std::size_t n, const double* x, const double* y) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
    }
    acc0 = _mm256_add_pd(acc0, acc1);
    __m128d lo = _mm256_castpd256_pd128(acc0);
    __m128d hi = _mm256_extractf128_pd(acc0, 1);
    lo = _mm_add_pd(lo, hi);
    double s = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
    for (; i < n; ++i)
        s += x[i] * y[i];
    return s;
}

void rank2_update(std::size_t n, double c1, const double* u, double c2,
                  const double* w, double* row) {
    const __m256d vc1 = _mm256_set1_pd(c1);
    const __m256d vc2 = _mm256_set1_pd(c2);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d r = _mm256_loadu_pd(row + i);
        r = _mm256_fmadd_pd(vc1, _mm256_loadu_pd(u + i), r);
        r = _mm256_fmadd_pd(vc2, _mm256_loadu_pd(w + i), r);
        _mm256_storeu_pd(row + i, r);
    }
    for (; i < n; ++i)
        row[i] += c1 * u[i] + c2 * w[i];
}

void hadamard(std::size_t n, const double* a, const double* b, double* out) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i)
        out[i] = a[i] * b[i];
}

}  // namespace avx2
}  // namespace kernels
}  // namespace fractal_spectra

#endif  // x86_64

// NEON kernel variants (aarch64). Direct transliteration of the scalar loops;
// selected at runtime on ARM builds.
#if defined(__aarch64__)

#include <arm_neon.h>

#include "kernels/simd_kernels.hpp"

namespace fractal_spectra {
namespace kernels {
namespace neon {

void axpy(std::size_t n, double a, const double* x, double* y) {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
    for (; i < n; ++i)
        y[i] += a * x[i];
}

double dot(std::size_t n, const double* x, const double* y) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        acc = vfmaq_f64(acc, vld1q_f64(x + i), vld1q_f64(y + i));
    double s = vaddvq_f64(acc);
    for (; i < n; ++i)
        s += x[i] * y[i];
    return s;
}

void rank2_update(std::size_t n, double c1, const double* u, double c2,
                  const double* w, double* row) {
    const float64x2_t vc1 = vdupq_n_f64(c1);
    const float64x2_t vc2 = vdupq_n_f64(c2);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t r = vld1q_f64(row + i);
        r = vfmaq_f64(r, vc1, vld1q_f64(u + i));
        r = vfmaq_f64(r, vc2, vld1q_f64(w + i));
        vst1q_f64(row + i, r);
    }
    for (; i < n; ++i)
        row[i] += c1 * u[i] + c2 * w[i];
}

void hadamard(std::size_t n, const double* a, const double* b, double* out) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(out + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    for (; i < n; ++i)
        out[i] = a[i] * b[i];
}

}  // namespace neon
}  // namespace kernels
}  // namespace fractal_spectra

#endif  // aarch64

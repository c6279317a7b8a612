// Reference kernels. Plain loops; every SIMD variant is tested against these.
#include "kernels/simd_kernels.hpp"

namespace fractal_spectra {
namespace kernels {
namespace scalar {

void axpy(std::size_t n, double a, const double* x, double* y) {
    for (std::size_t i = 0; i < n; ++i)
        y[i] += a * x[i];
}

double dot(std::size_t n, const double* x, const double* y) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += x[i] * y[i];
    return s;
}

void rank2_update(std::size_t n, double c1, const double* u, double c2,
                  const double* w, double* row) {
    for (std::size_t i = 0; i < n; ++i)
        row[i] += c1 * u[i] + c2 * w[i];
}

void hadamard(std::size_t n, const double* a, const double* b, double* out) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = a[i] * b[i];
}

}  // namespace scalar
}  // namespace kernels
}  // namespace fractal_spectra

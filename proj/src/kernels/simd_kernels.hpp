// Small dense linear-algebra kernels used by the eigensolver and profile folds.
// A scalar reference implementation always exists; on x86 an AVX2+FMA variant is
// selected at runtime (see dispatch in simd_kernels.cpp). Set the environment
// variable FRACTAL_SPECTRA_FORCE_SCALAR=1 to pin the scalar path.
#pragma once

#include <cstddef>
#include <string>

namespace fractal_spectra {
namespace kernels {

// y[i] += a * x[i]
using axpy_fn = void (*)(std::size_t n, double a, const double* x, double* y);
// sum_i x[i] * y[i]
using dot_fn = double (*)(std::size_t n, const double* x, const double* y);
// row[i] += c1 * u[i] + c2 * w[i]   (fused rank-2 row update)
using rank2_update_fn = void (*)(std::size_t n, double c1, const double* u,
                                 double c2, const double* w, double* row);
// out[i] = a[i] * b[i]
using hadamard_fn = void (*)(std::size_t n, const double* a, const double* b, double* out);

namespace scalar {
void axpy(std::size_t n, double a, const double* x, double* y);
double dot(std::size_t n, const double* x, const double* y);
void rank2_update(std::size_t n, double c1, const double* u, double c2,
                  const double* w, double* row);
void hadamard(std::size_t n, const double* a, const double* b, double* out);
}  // namespace scalar

// Active implementations (resolved once, on first use).
extern axpy_fn axpy;
extern dot_fn dot;
extern rank2_update_fn rank2_update;
extern hadamard_fn hadamard;

// Name of the selected variant: "scalar", "avx2", or "neon".
const std::string& active_variant();

}  // namespace kernels
}  // namespace fractal_spectra

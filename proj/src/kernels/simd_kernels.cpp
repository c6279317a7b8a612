// Runtime selection of the kernel variants. Resolution happens once, before
// main (static initializer); FRACTAL_SPECTRA_FORCE_SCALAR=1 pins the scalar path.
#include "kernels/simd_kernels.hpp"

#include <cstdlib>

namespace fractal_spectra {
namespace kernels {

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void axpy(std::size_t, double, const double*, double*);
double dot(std::size_t, const double*, const double*);
void rank2_update(std::size_t, double, const double*, double, const double*, double*);
void hadamard(std::size_t, const double*, const double*, double*);
}  // namespace avx2
#endif
#if defined(__aarch64__)
namespace neon {
void axpy(std::size_t, double, const double*, double*);
double dot(std::size_t, const double*, const double*);
void rank2_update(std::size_t, double, const double*, double, const double*, double*);
void hadamard(std::size_t, const double*, const double*, double*);
}  // namespace neon
#endif

namespace {

std::string select_variant() {
    const char* force = std::getenv("FRACTAL_SPECTRA_FORCE_SCALAR");
    if (force && force[0] == '1')
        return "scalar";
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return "avx2";
#elif defined(__aarch64__)
    return "neon";
#endif
    return "scalar";
}

const std::string g_variant = select_variant();

template <typename Fn>
Fn pick(Fn scalar_fn, Fn simd_fn) {
    return g_variant == "scalar" ? scalar_fn : simd_fn;
}

}  // namespace

#if defined(__x86_64__) || defined(_M_X64)
axpy_fn axpy = pick<axpy_fn>(&scalar::axpy, &avx2::axpy);
dot_fn dot = pick<dot_fn>(&scalar::dot, &avx2::dot);
rank2_update_fn rank2_update = pick<rank2_update_fn>(&scalar::rank2_update, &avx2::rank2_update);
hadamard_fn hadamard = pick<hadamard_fn>(&scalar::hadamard, &avx2::hadamard);
#elif defined(__aarch64__)
axpy_fn axpy = pick<axpy_fn>(&scalar::axpy, &neon::axpy);
dot_fn dot = pick<dot_fn>(&scalar::dot, &neon::dot);
rank2_update_fn rank2_update = pick<rank2_update_fn>(&scalar::rank2_update, &neon::rank2_update);
hadamard_fn hadamard = pick<hadamard_fn>(&scalar::hadamard, &neon::hadamard);
#else
axpy_fn axpy = &scalar::axpy;
dot_fn dot = &scalar::dot;
rank2_update_fn rank2_update = &scalar::rank2_update;
hadamard_fn hadamard = &scalar::hadamard;
#endif

const std::string& active_variant() {
    return g_variant;
}

}  // namespace kernels
}  // namespace fractal_spectra

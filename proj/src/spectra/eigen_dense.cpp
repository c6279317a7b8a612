#include "spectra/eigen_dense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/errors.hpp"
#include "kernels/simd_kernels.hpp"

namespace fractal_spectra {

namespace {

// Householder reduction to tridiagonal form (diagonal d, subdiagonal e with
// e[0] unused). Works on the lower triangle in place.
void tridiagonalize(std::vector<double>& a, int n, std::vector<double>& d,
                    std::vector<double>& e) {
    auto row = [&](int i) { return a.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(n); };
    d.assign(static_cast<std::size_t>(n), 0.0);
    e.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = n - 1; i >= 1; --i) {
        const int l = i - 1;
        double h = 0.0;
        if (l > 0) {
            double scale = 0.0;
            for (int k = 0; k <= l; ++k) scale += std::fabs(row(i)[k]);
            if (scale == 0.0) {
                e[static_cast<std::size_t>(i)] = row(i)[l];
            } else {
                for (int k = 0; k <= l; ++k) {
                    row(i)[k] /= scale;
                    h += row(i)[k] * row(i)[k];
                }
                double f = row(i)[l];
                const double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                e[static_cast<std::size_t>(i)] = scale * g;
                h -= f * g;
                row(i)[l] = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    double gj = kernels::dot(static_cast<std::size_t>(j) + 1, row(j), row(i));
                    for (int k = j + 1; k <= l; ++k) gj += row(k)[j] * row(i)[k];
                    e[static_cast<std::size_t>(j)] = gj / h;
                    f += e[static_cast<std::size_t>(j)] * row(i)[j];
                }
                const double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    const double fj = row(i)[j];
                    const double gj = e[static_cast<std::size_t>(j)] - hh * fj;
                    e[static_cast<std::size_t>(j)] = gj;
                    // row(j)[k] -= fj * e[k] + gj * row(i)[k],  k = 0..j
                    kernels::rank2_update(static_cast<std::size_t>(j) + 1, -fj, e.data(), -gj,
                                          row(i), row(j));
                }
            }
        } else {
            e[static_cast<std::size_t>(i)] = row(i)[l];
        }
    }
    for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = row(i)[i];
}

// Implicit-shift QL with Wilkinson shifts on the tridiagonal (d, e).
void ql_eigenvalues(std::vector<double>& d, std::vector<double>& e, int n) {
    const double eps = std::numeric_limits<double>::epsilon();
    for (int i = 1; i < n; ++i) e[static_cast<std::size_t>(i - 1)] = e[static_cast<std::size_t>(i)];
    e[static_cast<std::size_t>(n - 1)] = 0.0;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m = l;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::fabs(d[static_cast<std::size_t>(m)]) +
                                  std::fabs(d[static_cast<std::size_t>(m + 1)]);
                if (std::fabs(e[static_cast<std::size_t>(m)]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 50)
                    throw consistency_error("dense eigensolver: QL failed to converge");
                double g = (d[static_cast<std::size_t>(l + 1)] - d[static_cast<std::size_t>(l)]) /
                           (2.0 * e[static_cast<std::size_t>(l)]);
                double r = std::hypot(g, 1.0);
                g = d[static_cast<std::size_t>(m)] - d[static_cast<std::size_t>(l)] +
                    e[static_cast<std::size_t>(l)] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i = m - 1;
                bool underflow = false;
                for (; i >= l; --i) {
                    double f = s * e[static_cast<std::size_t>(i)];
                    const double b = c * e[static_cast<std::size_t>(i)];
                    r = std::hypot(f, g);
                    e[static_cast<std::size_t>(i + 1)] = r;
                    if (r == 0.0) {
                        d[static_cast<std::size_t>(i + 1)] -= p;
                        e[static_cast<std::size_t>(m)] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[static_cast<std::size_t>(i + 1)] - p;
                    r = (d[static_cast<std::size_t>(i)] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[static_cast<std::size_t>(i + 1)] = g + p;
                    g = c * r - b;
                }
                if (underflow && i >= l) continue;
                d[static_cast<std::size_t>(l)] -= p;
                e[static_cast<std::size_t>(l)] = g;
                e[static_cast<std::size_t>(m)] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace

std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n) {
    if (n <= 0 || a.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
        throw invalid_input_error("dense eigensolver: matrix size mismatch");
    for (double v : a)
        if (!std::isfinite(v)) throw invalid_input_error("dense eigensolver: non-finite entry");
    std::vector<double> d;
    std::vector<double> e;
    if (n == 1) return {a[0]};
    tridiagonalize(a, n, d, e);
    ql_eigenvalues(d, e, n);
    std::sort(d.begin(), d.end());
    return d;
}

}  // namespace fractal_spectra

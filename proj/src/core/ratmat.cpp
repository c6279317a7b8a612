#include "core/ratmat.hpp"

#include "core/errors.hpp"

namespace fractal_spectra {

RatMat rat_zero(std::size_t rows, std::size_t cols) {
    return RatMat(rows, RatVec(cols, Rational(0)));
}

RatMat rat_identity(std::size_t n) {
    RatMat m = rat_zero(n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

RatMat rat_mul(const RatMat& a, const RatMat& b) {
    const std::size_t rows = a.size();
    const std::size_t inner = b.size();
    const std::size_t cols = inner ? b[0].size() : 0;
    RatMat out = rat_zero(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    }
    return out;
}

RatMat rat_solve(RatMat a, RatMat b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        if (pivot == n) throw consistency_error("singular matrix in exact solve");
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        const Rational inv_p = Rational(1) / a[col][col];
        for (auto& v : a[col]) v *= inv_p;
        for (auto& v : b[col]) v *= inv_p;
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0) continue;
            const Rational factor = a[row][col];
            for (std::size_t j = col; j < n; ++j) a[row][j] -= factor * a[col][j];
            for (std::size_t j = 0; j < b[row].size(); ++j) b[row][j] -= factor * b[col][j];
        }
    }
    return b;
}

}  // namespace fractal_spectra

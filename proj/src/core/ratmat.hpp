// Small dense matrices over the exact rationals; used for boundary energy
// kernels, Schur complements and measure-vector solves.
#pragma once

#include <vector>

#include "core/rational.hpp"

namespace fractal_spectra {

using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;  // row-major, rectangular

RatMat rat_zero(std::size_t rows, std::size_t cols);
RatMat rat_identity(std::size_t n);
RatMat rat_mul(const RatMat& a, const RatMat& b);

// Exact solve of A X = B by Gauss-Jordan elimination with pivot search.
// Throws consistency_error when A is singular.
RatMat rat_solve(RatMat a, RatMat b);

}  // namespace fractal_spectra

// Dense symmetric eigensolver: Householder tridiagonalization followed by
// implicit-shift QL, eigenvalues only. The inner row updates run through the
// runtime-dispatched kernels.
#pragma once

#include <vector>

namespace fractal_spectra {

// All eigenvalues of the symmetric n x n matrix `a` (row-major, full storage;
// destroyed), ascending. Throws consistency_error when QL fails to converge
// and invalid_input_error on non-finite entries.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n);

}  // namespace fractal_spectra

// Spectral decimation fast path for the gasket: the complete level-m discrete
// spectrum from the inverse branches of R(lambda) = lambda(5 - lambda), with
// multiplicity bookkeeping audited against the closed-form dimensions.
#pragma once

#include "core/fractal.hpp"
#include "spectra/spectrum.hpp"

namespace fractal_spectra {

// Level-m gasket spectrum (m >= 1) under either boundary condition. Graph
// eigenvalues are mapped to the (H_m, M_m) normalization x = (3/2) 5^m lambda
// so the output is directly comparable with solve_dense. Levels above
// level_cap() are refused with resource_limit_error.
Spectrum decimate_sg(int level, BoundaryCondition bc);

// Dispatch guard for non-gasket presets: forwards to decimate_sg for the
// gasket and throws invalid_input_error otherwise.
Spectrum decimate_spectrum(const Fractal& f, int level, BoundaryCondition bc);

}  // namespace fractal_spectra

// Remainder regime classification for lattice self-similar spectra: detects
// the arithmetic lattice of the contraction scales, builds the generating
// polynomial of the induced step weights, strips its forced root at 1, and
// compares the modulus of the nearest remaining root against the growth per
// lattice step. Subleading oscillations decay when the growth stays strictly
// inside that modulus, persist at the same order on the critical circle, and
// dominate beyond it.
#pragma once

#include <complex>
#include <vector>

namespace fractal_spectra {

enum class RemainderRegime { below, critical, above };

struct RegimeReport {
    double t_step = 0.0;       // lattice generator: -log gamma_i = m_i * t_step
    std::vector<long long> m;  // lattice multipliers, gcd 1
    double p = 0.0;            // growth per lattice step, exp(d_s * t_step)
    double beta = 0.0;         // smallest modulus among remaining roots,
                               // +infinity when none survive the division
    int multiplicity = 0;      // roots sharing the modulus beta
    RemainderRegime regime = RemainderRegime::below;
};

// gammas are the contraction ratios (each in (0,1), at least two) and d_s the
// spectral exponent solving sum gamma_i^{d_s} = 1. Throws invalid_input_error
// when the log-ratios admit no common lattice step (denominators above 64 at
// relative tolerance 1e-9) and consistency_error when d_s fails the measure
// identity.
RegimeReport remainder_regime(const std::vector<double>& gammas, double d_s);

// All complex roots of c[0] + c[1] z + ... + c[n] z^n by simultaneous
// (Durand-Kerner) iteration; trailing zero coefficients are trimmed first.
// A constant polynomial has no roots; the zero polynomial is refused.
std::vector<std::complex<double>> polynomial_roots(
    const std::vector<double>& coeffs);

}  // namespace fractal_spectra

// Harmonic structures (boundary energy kernel D, renormalization weights r),
// self-similar measures, and the derived gamma data (exponents, period).
#pragma once

#include <vector>

#include "core/fractal.hpp"
#include "core/ratmat.hpp"

namespace fractal_spectra {

// Boundary energy E_0(u) = sum_{p<q} D_pq (u_p - u_q)^2 with the matrix
// convention that -D is the weighted graph Laplacian on V_0: D symmetric,
// off-diagonal >= 0, rows summing to zero, kernel exactly the constants.
struct HarmonicStructure {
    RatMat D;                    // Q x Q
    std::vector<Rational> r;     // per-letter renormalization, in (0,1)

    int boundary_count() const { return static_cast<int>(D.size()); }
    int letter_count() const { return static_cast<int>(r.size()); }
};

void validate_harmonic(const HarmonicStructure& hs);

struct SelfSimilarMeasure {
    std::vector<Rational> weights;  // per-letter, in (0,1), summing to 1

    int letter_count() const { return static_cast<int>(weights.size()); }
};

void validate_measure(const SelfSimilarMeasure& mu);

// Gasket: conductance 1 on every corner pair, r_i = 3/5.
HarmonicStructure sg_harmonic();
SelfSimilarMeasure sg_measure();

// Snowflake: the energy renormalization weight is a genuine input; the
// boundary kernel is the hexagon cycle with unit conductances (a symmetric
// placeholder -- no in-scope quantity depends on its exact entries).
HarmonicStructure snowflake_harmonic(const Rational& r = Rational(7, 15));
SelfSimilarMeasure snowflake_measure();

struct GammaData {
    std::vector<double> gammas;  // gamma_i = sqrt(r_i mu_i)
    bool uniform = false;        // all gamma_i equal (decided exactly on r_i mu_i)
    double gamma = 0.0;          // common value when uniform
    double period = 0.0;         // T = -log gamma when uniform
    double d_S = 0.0;            // solves sum gamma_i^{d_S} = 1
};

// Derived exponents; d_S comes from the closed form when uniform and from
// bisection otherwise.
GammaData gamma_data(const HarmonicStructure& hs, const SelfSimilarMeasure& mu);

}  // namespace fractal_spectra

#include "forms/harmonic.hpp"

#include <cmath>
#include <queue>

#include "core/errors.hpp"

namespace fractal_spectra {

void validate_harmonic(const HarmonicStructure& hs) {
    const std::size_t q = hs.D.size();
    if (q < 2) throw invalid_input_error("energy kernel needs at least two boundary points");
    for (const auto& row : hs.D) {
        if (row.size() != q) throw invalid_input_error("energy kernel must be square");
    }
    for (std::size_t p = 0; p < q; ++p) {
        Rational row_sum(0);
        for (std::size_t s = 0; s < q; ++s) {
            if (hs.D[p][s] != hs.D[s][p]) {
                throw invalid_input_error("energy kernel must be symmetric");
            }
            if (p != s && hs.D[p][s] < 0) {
                throw invalid_input_error("energy kernel off-diagonals must be nonnegative");
            }
            row_sum += hs.D[p][s];
        }
        if (row_sum != 0) throw invalid_input_error("energy kernel rows must sum to zero");
    }
    // Kernel is exactly the constants iff the positive-conductance graph is
    // connected (then -D is a connected-graph Laplacian).
    std::vector<bool> seen(q, false);
    std::queue<std::size_t> frontier;
    frontier.push(0);
    seen[0] = true;
    std::size_t reached = 1;
    while (!frontier.empty()) {
        const std::size_t p = frontier.front();
        frontier.pop();
        for (std::size_t s = 0; s < q; ++s) {
            if (!seen[s] && p != s && hs.D[p][s] > 0) {
                seen[s] = true;
                ++reached;
                frontier.push(s);
            }
        }
    }
    if (reached != q) {
        throw invalid_input_error("energy kernel graph must be connected (kernel = constants)");
    }
    if (hs.r.empty()) throw invalid_input_error("renormalization weights missing");
    for (const Rational& ri : hs.r) {
        if (!(ri > 0 && ri < 1)) {
            throw invalid_input_error("renormalization weights must lie in (0,1)");
        }
    }
}

void validate_measure(const SelfSimilarMeasure& mu) {
    if (mu.weights.empty()) throw invalid_input_error("measure weights missing");
    Rational total(0);
    for (const Rational& w : mu.weights) {
        if (!(w > 0 && w < 1)) throw invalid_input_error("measure weights must lie in (0,1)");
        total += w;
    }
    if (total != 1) throw invalid_input_error("measure weights must sum to 1 exactly");
}

HarmonicStructure sg_harmonic() {
    HarmonicStructure hs;
    hs.D = rat_zero(3, 3);
    for (std::size_t p = 0; p < 3; ++p) {
        for (std::size_t s = 0; s < 3; ++s) hs.D[p][s] = (p == s) ? Rational(-2) : Rational(1);
    }
    hs.r.assign(3, Rational(3, 5));
    return hs;
}

SelfSimilarMeasure sg_measure() { return SelfSimilarMeasure{{Rational(1, 3), Rational(1, 3), Rational(1, 3)}}; }

HarmonicStructure snowflake_harmonic(const Rational& r) {
    HarmonicStructure hs;
    hs.D = rat_zero(6, 6);
    for (std::size_t p = 0; p < 6; ++p) {
        hs.D[p][p] = Rational(-2);
        hs.D[p][(p + 1) % 6] = Rational(1);
        hs.D[p][(p + 5) % 6] = Rational(1);
    }
    hs.r.assign(7, r);
    return hs;
}

SelfSimilarMeasure snowflake_measure() {
    return SelfSimilarMeasure{std::vector<Rational>(7, Rational(1, 7))};
}

GammaData gamma_data(const HarmonicStructure& hs, const SelfSimilarMeasure& mu) {
    validate_harmonic(hs);
    validate_measure(mu);
    if (hs.letter_count() != mu.letter_count()) {
        throw invalid_input_error("weights and measure disagree on the number of maps");
    }
    GammaData gd;
    const std::size_t n = hs.r.size();
    std::vector<Rational> squares(n);
    for (std::size_t i = 0; i < n; ++i) {
        squares[i] = hs.r[i] * mu.weights[i];
        gd.gammas.push_back(std::sqrt(rational_to_double(squares[i])));
    }
    gd.uniform = true;
    for (std::size_t i = 1; i < n; ++i) {
        if (squares[i] != squares[0]) gd.uniform = false;
    }
    if (gd.uniform) {
        gd.gamma = gd.gammas[0];
        gd.period = -std::log(gd.gamma);
        gd.d_S = std::log(static_cast<double>(n)) / (-std::log(gd.gamma));
        return gd;
    }
    // sum gamma_i^s is strictly decreasing from N (s=0) to 0, so the root is
    // unique; bracket it and bisect to machine precision.
    auto total = [&](double s) {
        double acc = 0.0;
        for (double g : gd.gammas) acc += std::pow(g, s);
        return acc;
    };
    double lo = 0.0, hi = 1.0;
    while (total(hi) > 1.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (total(mid) > 1.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    gd.d_S = 0.5 * (lo + hi);
    return gd;
}

}  // namespace fractal_spectra

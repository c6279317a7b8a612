#include "forms/assemble.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "core/errors.hpp"
#include "core/ratmat.hpp"

namespace fractal_spectra {

namespace {

// Exact product of per-letter values over the word.
Rational word_product(const std::vector<Rational>& per_letter, const Word& w) {
    Rational out(1);
    for (int letter : w) out *= per_letter[static_cast<std::size_t>(letter - 1)];
    return out;
}

void check_inputs(const HarmonicStructure& hs, const SelfSimilarMeasure& mu,
                  const VertexSet& vs, const std::vector<unsigned>& realized,
                  const std::vector<int>& dirichlet_ids) {
    validate_harmonic(hs);
    validate_measure(mu);
    if (hs.letter_count() != mu.letter_count())
        throw invalid_input_error("assemble: harmonic structure and measure disagree on letter count");
    if (realized.size() != static_cast<std::size_t>(vs.cell_count()))
        throw invalid_input_error("assemble: one realization mask per cell required");
    const int q = hs.boundary_count();
    if (!vs.cells.empty() && static_cast<int>(vs.cells.front().size()) != q)
        throw invalid_input_error("assemble: harmonic structure boundary size does not match cells");
    for (int id : dirichlet_ids)
        if (id < 0 || id >= vs.vertex_count())
            throw invalid_input_error("assemble: dirichlet vertex id out of range");
    for (unsigned mask : realized)
        if (mask >> q)
            throw invalid_input_error("assemble: realization mask wider than the cell boundary");
}

}  // namespace

LevelForm assemble_cells(const HarmonicStructure& hs, const SelfSimilarMeasure& mu,
                         const VertexSet& vs, const std::vector<unsigned>& realized,
                         const std::vector<int>& dirichlet_ids) {
    check_inputs(hs, mu, vs, realized, dirichlet_ids);
    const int q = hs.boundary_count();
    const int nv = vs.vertex_count();

    // Realized vertices and their exact lumped masses.
    std::vector<Rational> mass_exact(static_cast<std::size_t>(nv), Rational(0));
    std::vector<char> is_realized(static_cast<std::size_t>(nv), 0);
    for (int c = 0; c < vs.cell_count(); ++c) {
        const unsigned mask = realized[static_cast<std::size_t>(c)];
        if (mask == 0) continue;
        const Rational cell_mass =
            word_product(mu.weights, vs.cell_words[static_cast<std::size_t>(c)]) / q;
        for (int k = 0; k < q; ++k) {
            if (!(mask & (1u << k))) continue;
            const int id = vs.cells[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)];
            is_realized[static_cast<std::size_t>(id)] = 1;
            mass_exact[static_cast<std::size_t>(id)] += cell_mass;
        }
    }

    std::vector<char> constrained(static_cast<std::size_t>(nv), 0);
    for (int id : dirichlet_ids) constrained[static_cast<std::size_t>(id)] = 1;

    LevelForm form;
    form.level = vs.level;
    form.total_vertices = nv;
    form.vertex_to_free.assign(static_cast<std::size_t>(nv), -1);
    form.total_mass = Rational(0);
    for (int id = 0; id < nv; ++id) {
        if (!is_realized[static_cast<std::size_t>(id)]) continue;
        form.total_mass += mass_exact[static_cast<std::size_t>(id)];
        if (constrained[static_cast<std::size_t>(id)]) continue;
        form.vertex_to_free[static_cast<std::size_t>(id)] = form.free_count();
        form.free_ids.push_back(id);
        form.mass.push_back(rational_to_double(mass_exact[static_cast<std::size_t>(id)]));
    }
    if (form.free_ids.empty())
        throw invalid_input_error("assemble: degenerate problem, no free vertices remain");

    // Cell-sum of the lifted boundary kernel, restricted to realized pairs.
    std::map<std::pair<int, int>, double> entries;
    for (int c = 0; c < vs.cell_count(); ++c) {
        const unsigned mask = realized[static_cast<std::size_t>(c)];
        if (mask == 0) continue;
        const double inv_r = rational_to_double(
            Rational(1) / word_product(hs.r, vs.cell_words[static_cast<std::size_t>(c)]));
        const auto& ids = vs.cells[static_cast<std::size_t>(c)];
        for (int a = 0; a < q; ++a) {
            if (!(mask & (1u << a))) continue;
            for (int b = a + 1; b < q; ++b) {
                if (!(mask & (1u << b))) continue;
                const Rational& cond = hs.D[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
                if (cond == 0) continue;
                const double w = rational_to_double(cond) * inv_r;
                const int fa = form.vertex_to_free[static_cast<std::size_t>(ids[static_cast<std::size_t>(a)])];
                const int fb = form.vertex_to_free[static_cast<std::size_t>(ids[static_cast<std::size_t>(b)])];
                if (fa >= 0) entries[{fa, fa}] += w;
                if (fb >= 0) entries[{fb, fb}] += w;
                if (fa >= 0 && fb >= 0) entries[{std::min(fa, fb), std::max(fa, fb)}] -= w;
            }
        }
    }
    form.stiffness.reserve(entries.size());
    for (const auto& [key, value] : entries)
        form.stiffness.push_back(SparseEntry{key.first, key.second, value});
    return form;
}

LevelForm assemble(const HarmonicStructure& hs, const SelfSimilarMeasure& mu,
                   const VertexSet& vs, const std::vector<int>& dirichlet_ids) {
    const int q = hs.boundary_count();
    const unsigned full = (q >= 32) ? ~0u : ((1u << q) - 1u);
    std::vector<unsigned> realized(static_cast<std::size_t>(vs.cell_count()), full);
    return assemble_cells(hs, mu, vs, realized, dirichlet_ids);
}

CompatibilityReport check_compatibility(const HarmonicStructure& hs, const Fractal& f) {
    validate_harmonic(hs);
    validate_fractal(f);
    if (hs.letter_count() != f.letter_count() || hs.boundary_count() != f.boundary_count())
        throw invalid_input_error("check_compatibility: harmonic structure does not match the fractal");

    const VertexSet vs = build_vertex_set(f, 1);
    const int q = hs.boundary_count();
    const int nv = vs.vertex_count();

    // Exact level-1 stiffness over all of V_1.
    RatMat h = rat_zero(static_cast<std::size_t>(nv), static_cast<std::size_t>(nv));
    for (int c = 0; c < vs.cell_count(); ++c) {
        const int letter = vs.cell_words[static_cast<std::size_t>(c)].front();
        const Rational inv_r = Rational(1) / hs.r[static_cast<std::size_t>(letter - 1)];
        const auto& ids = vs.cells[static_cast<std::size_t>(c)];
        for (int a = 0; a < q; ++a) {
            for (int b = a + 1; b < q; ++b) {
                const Rational w = hs.D[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] * inv_r;
                if (w == 0) continue;
                const auto ia = static_cast<std::size_t>(ids[static_cast<std::size_t>(a)]);
                const auto ib = static_cast<std::size_t>(ids[static_cast<std::size_t>(b)]);
                h[ia][ia] += w;
                h[ib][ib] += w;
                h[ia][ib] -= w;
                h[ib][ia] -= w;
            }
        }
    }

    // Split V_1 into the boundary (in V_0 order) and the interior.
    std::vector<char> is_boundary(static_cast<std::size_t>(nv), 0);
    for (int id : vs.boundary_ids) is_boundary[static_cast<std::size_t>(id)] = 1;
    std::vector<int> interior;
    for (int id = 0; id < nv; ++id)
        if (!is_boundary[static_cast<std::size_t>(id)]) interior.push_back(id);

    const auto nb = static_cast<std::size_t>(q);
    const auto ni = interior.size();
    RatMat s = rat_zero(nb, nb);
    for (std::size_t a = 0; a < nb; ++a)
        for (std::size_t b = 0; b < nb; ++b)
            s[a][b] = h[static_cast<std::size_t>(vs.boundary_ids[a])]
                       [static_cast<std::size_t>(vs.boundary_ids[b])];
    if (ni > 0) {
        RatMat hii = rat_zero(ni, ni);
        RatMat hib = rat_zero(ni, nb);
        for (std::size_t a = 0; a < ni; ++a) {
            for (std::size_t b = 0; b < ni; ++b)
                hii[a][b] = h[static_cast<std::size_t>(interior[a])][static_cast<std::size_t>(interior[b])];
            for (std::size_t b = 0; b < nb; ++b)
                hib[a][b] = h[static_cast<std::size_t>(interior[a])]
                             [static_cast<std::size_t>(vs.boundary_ids[b])];
        }
        RatMat x;  // hii^{-1} hib
        try {
            x = rat_solve(std::move(hii), hib);
        } catch (const consistency_error&) {
            throw consistency_error("check_compatibility: interior block is not eliminable");
        }
        for (std::size_t a = 0; a < nb; ++a)
            for (std::size_t b = 0; b < nb; ++b)
                for (std::size_t k = 0; k < ni; ++k)
                    s[a][b] -= hib[k][a] * x[k][b];
    }

    CompatibilityReport report;
    report.residual = Rational(0);
    for (std::size_t a = 0; a < nb; ++a) {
        for (std::size_t b = 0; b < nb; ++b) {
            Rational diff = s[a][b] + hs.D[a][b];  // target is -D
            if (diff < 0) diff = -diff;
            if (diff > report.residual) report.residual = diff;
        }
    }
    report.pass = (report.residual == 0);
    return report;
}

}  // namespace fractal_spectra

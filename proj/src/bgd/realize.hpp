// Pointwise realization of a domain family on refinement vertex sets: which
// corner slots of each level-n cell belong to a domain, which vertices are
// pinned by its boundary, substitution-coherence checking, and cell counts of
// the induced Whitney-type decompositions.
#pragma once

#include <functional>

#include "bgd/systems.hpp"
#include "core/fractal.hpp"
#include "core/rational.hpp"

namespace fractal_spectra {

struct DomainRealization {
    int domain = 0;
    int level = 0;
    // Per cell of the vertex set: bit k set when corner slot k+1 is realized;
    // 0 drops the cell entirely.
    std::vector<unsigned> realized_masks;
    std::vector<int> free_ids;       // realized and not pinned, ascending
    std::vector<int> dirichlet_ids;  // pinned boundary vertices, ascending
    // Pinned vertices no realized cell slot touches; non-empty only for
    // incoherent system data.
    std::vector<int> unrealized_boundary;
};

// Walk every level-n cell through the substitution rules of `domain`:
// inside letters realize whole sub-cells, outside letters drop them, edge
// letters continue in the target domain, and an exhausted word realizes the
// member and trace slots of the current domain (trace corners pinned). Under
// the relaxed variant, crossing an edge additionally pins the edge's declared
// extra corners of the sub-cell. Performs structural checks only, so
// degenerate systems (e.g. a domain with every letter inside) can still be
// realized; use validate_system/analyze for the full invariants.
// Throws invalid_input_error for counting-only systems, mismatched geometry,
// or a level-0 request on a domain whose cell realizes no corner.
DomainRealization realize_domain(const BgdSystem& sys, const Fractal& f,
                                 const VertexSet& vs, int domain);

// Geometric realization at the given level: free points of the open set and
// its pinned boundary points.
struct DomainVertexSets {
    std::vector<Pt> free_points;
    std::vector<Pt> dirichlet_points;
};
DomainVertexSets domain_vertices(const BgdSystem& sys, const Fractal& f,
                                 int domain, int level);

// Substitution-coherence check: for every level n <= n_max, domain i and
// letter k, the realized and pinned vertices inside cell F_k(K) must equal
// the level-(n-1) realization of the rule for (i, k) pushed through F_k, and
// every pinned vertex must lie on a realized cell. Reports the first
// violation.
struct ConsistencyReport {
    bool pass = true;
    int level = -1;
    int domain = -1;
    int letter = -1;
    std::string detail;
};
ConsistencyReport bgd_consistency(const BgdSystem& sys, const Fractal& f, int n_max);

// Cell counts of the Whitney-type decomposition of a domain: inner_counts[k]
// is the number of level-k cells inside the open set whose parent cell is
// not, boundary_counts[k] the number of level-k cells meeting the boundary.
// The exponent estimates are least-squares slopes of log(count) against
// k*log(1/theta) over the last five levels (0 when fewer than two positive
// counts remain), and inner_series is the exact partial sum of
// inner_counts[k] / N^k, which converges to the domain measure.
struct WhitneyReport {
    int domain = 0;
    int k_max = 0;
    std::vector<BigInt> inner_counts;     // index 0 unused (= 0)
    std::vector<BigInt> boundary_counts;  // index k = #cells at level k
    double alpha_inner = 0.0;
    double alpha_boundary = 0.0;
    Rational inner_series;
};
WhitneyReport whitney(const BgdSystem& sys, const Fractal& f, int domain, int k_max);

// The same counts for an arbitrary open set described by a cell classifier.
// The word lists letters innermost first (level = word length); cells
// classified `crossing` are subdivided, `inside` children of crossing cells
// are counted as inner, `outside` children are dropped.
enum class CellKind { inside, crossing, outside };
WhitneyReport whitney_by_classifier(const std::function<CellKind(const Word&)>& classify,
                                    int letter_count, const Rational& theta, int k_max);

}  // namespace fractal_spectra

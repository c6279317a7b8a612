// Discrete energy forms: level-n stiffness matrices assembled cell by cell,
// lumped mass weights, Dirichlet elimination, and the exact Schur-complement
// compatibility check of a harmonic structure against its boundary kernel.
#pragma once

#include <vector>

#include "core/fractal.hpp"
#include "forms/harmonic.hpp"

namespace fractal_spectra {

// One stiffness coefficient over free-vertex indices; only row <= col is stored.
struct SparseEntry {
    int row = 0;
    int col = 0;
    double value = 0.0;
};

// The level-n quadratic form pair (stiffness, lumped mass) after removing
// constrained rows. Vertex ids refer to the VertexSet the form was built from.
struct LevelForm {
    int level = 0;
    int total_vertices = 0;            // vertices of the underlying VertexSet
    std::vector<int> free_ids;         // free vertex ids, ascending
    std::vector<int> vertex_to_free;   // id -> free index, -1 when absent
    std::vector<SparseEntry> stiffness;  // upper triangle, free indices
    std::vector<double> mass;          // per free index, positive
    Rational total_mass;               // exact mass of all realized vertices

    int free_count() const { return static_cast<int>(free_ids.size()); }
};

// Assembles over every cell with every boundary slot realized; dirichlet_ids
// are pinned to zero (rows removed; their edge terms remain on the free
// diagonal). Throws invalid_input_error when no free vertex remains or an id
// is out of range.
LevelForm assemble(const HarmonicStructure& hs, const SelfSimilarMeasure& mu,
                   const VertexSet& vs, const std::vector<int>& dirichlet_ids);

// General engine behind `assemble`, used for subdomains: realized[c] is a
// bitmask over the Q boundary slots of cell c (bit k = slot k realized; 0
// drops the cell entirely). A cell contributes its boundary-kernel edge
// (a, b) only when both slots are realized, and mass mu_w / Q to each
// realized slot. Unrealized vertices are absent from the problem.
LevelForm assemble_cells(const HarmonicStructure& hs, const SelfSimilarMeasure& mu,
                         const VertexSet& vs, const std::vector<unsigned>& realized,
                         const std::vector<int>& dirichlet_ids);

struct CompatibilityReport {
    bool pass = false;
    Rational residual;  // max entrywise |Schur(H_1 onto V_0) - (-D)|, exact
};

// Eliminates the interior of V_1 from the level-1 stiffness by an exact
// rational Schur complement and compares with -D entrywise. pass iff the
// residual is exactly zero.
CompatibilityReport check_compatibility(const HarmonicStructure& hs, const Fractal& f);

}  // namespace fractal_spectra

// Self-similar fractals: iterated function systems, addressing words, cells,
// and the nested vertex sets V_0 subset V_1 subset ... built by exact gluing.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "core/geometry.hpp"

namespace fractal_spectra {

// Address word; letters are 1-based indices into Fractal::maps. Letters are
// applied first-to-last: the word (w1, w2) sends p to F_{w2}(F_{w1}(p)), so
// the last letter names the outermost level-1 cell containing the cell K_w.
using Word = std::vector<int>;

struct Fractal {
    std::string name;
    std::vector<AffineMap> maps;            // the IFS, letters 1..N
    std::vector<Rational> contraction;      // per-letter geometric ratio in (0,1)
    std::vector<Pt> boundary;               // the cell boundary V_0, pairwise distinct

    int letter_count() const { return static_cast<int>(maps.size()); }
    int boundary_count() const { return static_cast<int>(boundary.size()); }
};

// Throws invalid_input_error when structural requirements fail
// (at least two maps, ratios in (0,1), boundary nonempty and distinct).
void validate_fractal(const Fractal& f);

// Sierpinski gasket: corners (0,0), (1,0), (1/2, sqrt(3)/2), three maps with
// ratio 1/2 about the corners.
Fractal sg_geometry();

// Snowflake: regular hexagon corners as boundary, seven maps with ratio 1/3
// about the six corners and the center.
Fractal snowflake_geometry();

// Image of p under the word's composition (letters applied first-to-last).
Pt apply_word(const Fractal& f, const Word& w, const Pt& p);

// The composed affine map of the word.
AffineMap word_map(const Fractal& f, const Word& w);

// Vertices of the cell K_w, ordered like Fractal::boundary.
std::vector<Pt> cell_of(const Fractal& f, const Word& w);

// Vertex set V_n together with the level-n cells and their incidence.
struct VertexSet {
    int level = 0;
    std::vector<Pt> points;                    // vertex id -> coordinates
    std::map<Pt, int> index;                   // exact inverse of `points`
    std::vector<std::vector<int>> cells;       // cell -> vertex ids, boundary order
    std::vector<Word> cell_words;              // cell -> its address word
    std::vector<std::vector<int>> vertex_cells;  // vertex -> incident cells
    std::vector<int> boundary_ids;             // ids of the V_0 corners inside V_n

    int vertex_count() const { return static_cast<int>(points.size()); }
    int cell_count() const { return static_cast<int>(cells.size()); }
};

// Builds V_n by exact identification of glued cell corners. Cost grows like
// N^n; levels above the configured cap are rejected with resource_limit_error.
VertexSet build_vertex_set(const Fractal& f, int level);

// Maximum admissible refinement level (default 12, overridable through the
// FRACTAL_SPECTRA_LEVEL_CAP environment variable).
int level_cap();

}  // namespace fractal_spectra

#include "core/fractal.hpp"

#include <cstdlib>
#include <set>
#include <string>

#include "core/errors.hpp"

namespace fractal_spectra {

void validate_fractal(const Fractal& f) {
    if (f.maps.size() < 2) {
        throw invalid_input_error("fractal '" + f.name + "': need at least two maps");
    }
    if (f.contraction.size() != f.maps.size()) {
        throw invalid_input_error("fractal '" + f.name + "': one contraction ratio per map required");
    }
    for (const Rational& c : f.contraction) {
        if (!(c > 0 && c < 1)) {
            throw invalid_input_error("fractal '" + f.name + "': contraction ratios must lie in (0,1)");
        }
    }
    if (f.boundary.empty()) {
        throw invalid_input_error("fractal '" + f.name + "': boundary must be nonempty");
    }
    std::set<Pt> distinct(f.boundary.begin(), f.boundary.end());
    if (distinct.size() != f.boundary.size()) {
        throw invalid_input_error("fractal '" + f.name + "': boundary points must be pairwise distinct");
    }
}

Fractal sg_geometry() {
    Fractal f;
    f.name = "sg";
    const Rational half(1, 2);
    f.boundary = {
        Pt{QuadExt{Rational(0)}, QuadExt{Rational(0)}},
        Pt{QuadExt{Rational(1)}, QuadExt{Rational(0)}},
        Pt{QuadExt{half}, QuadExt{Rational(0), half}},
    };
    for (const Pt& corner : f.boundary) {
        f.maps.push_back(scaling_about(half, corner));
        f.contraction.push_back(half);
    }
    return f;
}

Fractal snowflake_geometry() {
    Fractal f;
    f.name = "snowflake";
    const Rational third(1, 3);
    const Rational half(1, 2);
    // Hexagon corners p_k = (cos(k pi/3), sin(k pi/3)), k = 1..6.
    f.boundary = {
        Pt{QuadExt{half}, QuadExt{Rational(0), half}},
        Pt{QuadExt{-half}, QuadExt{Rational(0), half}},
        Pt{QuadExt{Rational(-1)}, QuadExt{Rational(0)}},
        Pt{QuadExt{-half}, QuadExt{Rational(0), -half}},
        Pt{QuadExt{half}, QuadExt{Rational(0), -half}},
        Pt{QuadExt{Rational(1)}, QuadExt{Rational(0)}},
    };
    for (const Pt& corner : f.boundary) {
        f.maps.push_back(scaling_about(third, corner));
        f.contraction.push_back(third);
    }
    const Pt center{QuadExt{Rational(0)}, QuadExt{Rational(0)}};
    f.maps.push_back(scaling_about(third, center));
    f.contraction.push_back(third);
    return f;
}

namespace {

void check_letter(const Fractal& f, int letter) {
    if (letter < 1 || letter > f.letter_count()) {
        throw invalid_input_error("letter " + std::to_string(letter) + " outside 1.." +
                                  std::to_string(f.letter_count()));
    }
}

}  // namespace

Pt apply_word(const Fractal& f, const Word& w, const Pt& p) {
    Pt q = p;
    for (int letter : w) {
        check_letter(f, letter);
        q = f.maps[static_cast<std::size_t>(letter - 1)](q);
    }
    return q;
}

AffineMap word_map(const Fractal& f, const Word& w) {
    AffineMap m = scaling_about(Rational(1), Pt{QuadExt{Rational(0)}, QuadExt{Rational(0)}});
    for (int letter : w) {
        check_letter(f, letter);
        m = compose(f.maps[static_cast<std::size_t>(letter - 1)], m);
    }
    return m;
}

std::vector<Pt> cell_of(const Fractal& f, const Word& w) {
    const AffineMap m = word_map(f, w);
    std::vector<Pt> out;
    out.reserve(f.boundary.size());
    for (const Pt& p : f.boundary) out.push_back(m(p));
    return out;
}

int level_cap() {
    static const int cap = [] {
        if (const char* env = std::getenv("FRACTAL_SPECTRA_LEVEL_CAP")) {
            const int v = std::atoi(env);
            if (v > 0) return v;
        }
        return 12;
    }();
    return cap;
}

VertexSet build_vertex_set(const Fractal& f, int level) {
    validate_fractal(f);
    if (level < 0) throw invalid_input_error("refinement level must be nonnegative");
    if (level > level_cap()) {
        throw resource_limit_error("refinement level " + std::to_string(level) +
                                   " exceeds cap " + std::to_string(level_cap()));
    }

    VertexSet vs;
    vs.level = 0;
    for (const Pt& p : f.boundary) {
        vs.index.emplace(p, vs.vertex_count());
        vs.points.push_back(p);
    }
    vs.cells.push_back({});
    for (int j = 0; j < f.boundary_count(); ++j) vs.cells[0].push_back(j);
    vs.cell_words.push_back({});

    const int letters = f.letter_count();
    for (int k = 0; k < level; ++k) {
        VertexSet next;
        next.level = k + 1;
        // Per outer letter, transform every current vertex once and record the
        // id translation; cells then remap indices instead of re-transforming.
        for (int i = 1; i <= letters; ++i) {
            const AffineMap& map = f.maps[static_cast<std::size_t>(i - 1)];
            std::vector<int> translate(vs.points.size());
            for (std::size_t v = 0; v < vs.points.size(); ++v) {
                const Pt image = map(vs.points[v]);
                auto [it, inserted] = next.index.emplace(image, next.vertex_count());
                if (inserted) next.points.push_back(image);
                translate[v] = it->second;
            }
            for (std::size_t c = 0; c < vs.cells.size(); ++c) {
                std::vector<int> ids;
                ids.reserve(vs.cells[c].size());
                for (int v : vs.cells[c]) ids.push_back(translate[static_cast<std::size_t>(v)]);
                next.cells.push_back(std::move(ids));
                Word w = vs.cell_words[c];
                w.push_back(i);
                next.cell_words.push_back(std::move(w));
            }
        }
        vs = std::move(next);
    }

    vs.vertex_cells.assign(vs.points.size(), {});
    for (std::size_t c = 0; c < vs.cells.size(); ++c) {
        for (int v : vs.cells[c]) {
            vs.vertex_cells[static_cast<std::size_t>(v)].push_back(static_cast<int>(c));
        }
    }
    vs.boundary_ids.reserve(f.boundary.size());
    for (const Pt& p : f.boundary) {
        const auto it = vs.index.find(p);
        if (it == vs.index.end()) {
            throw consistency_error("fractal '" + f.name + "': a boundary corner left the vertex set");
        }
        vs.boundary_ids.push_back(it->second);
    }
    return vs;
}

}  // namespace fractal_spectra

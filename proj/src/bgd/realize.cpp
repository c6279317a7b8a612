#include "bgd/realize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "core/errors.hpp"

namespace fractal_spectra {

namespace {

constexpr int kInside = 1;
constexpr int kOutside = 2;
constexpr int kEdge = 3;

// Per-domain letter dispatch table with structural range checks only; the
// richer validity invariants stay in validate_system so degenerate systems
// remain realizable.
struct RoleTable {
    std::vector<int> role;        // indexed by letter, 0 = unassigned
    std::vector<int> edge_index;  // indexed by letter, into domain.edges
    unsigned term_mask = 0;       // member + trace slots
};

std::vector<RoleTable> build_roles(const BgdSystem& sys) {
    const int n = sys.domain_count();
    std::vector<RoleTable> tables(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const BgdDomain& dom = sys.domains[i];
        RoleTable& t = tables[static_cast<std::size_t>(i)];
        t.role.assign(static_cast<std::size_t>(sys.letter_count) + 1, 0);
        t.edge_index.assign(static_cast<std::size_t>(sys.letter_count) + 1, -1);
        auto mark = [&](int letter, int what, int edge) {
            if (letter < 1 || letter > sys.letter_count)
                throw invalid_input_error("realize: domain " + std::to_string(i) +
                                          " uses letter " + std::to_string(letter) +
                                          " outside the alphabet");
            if (t.role[static_cast<std::size_t>(letter)] != 0)
                throw invalid_input_error("realize: domain " + std::to_string(i) +
                                          " assigns letter " + std::to_string(letter) +
                                          " twice");
            t.role[static_cast<std::size_t>(letter)] = what;
            t.edge_index[static_cast<std::size_t>(letter)] = edge;
        };
        for (int k : dom.inside_letters) mark(k, kInside, -1);
        for (int k : dom.outside_letters) mark(k, kOutside, -1);
        for (std::size_t e = 0; e < dom.edges.size(); ++e) {
            const BgdEdge& edge = dom.edges[e];
            mark(edge.letter, kEdge, static_cast<int>(e));
            if (edge.target < 0 || edge.target >= n)
                throw invalid_input_error("realize: domain " + std::to_string(i) +
                                          " edge target out of range");
            for (int s : edge.extra_boundary)
                if (s < 1 || s > sys.boundary_count)
                    throw invalid_input_error("realize: domain " + std::to_string(i) +
                                              " extra corner slot out of range");
        }
        for (int k = 1; k <= sys.letter_count; ++k)
            if (t.role[static_cast<std::size_t>(k)] == 0)
                throw invalid_input_error("realize: domain " + std::to_string(i) +
                                          " leaves letter " + std::to_string(k) +
                                          " unassigned");
        auto slot_bits = [&](const std::vector<int>& slots) {
            unsigned bits = 0;
            for (int s : slots) {
                if (s < 1 || s > sys.boundary_count)
                    throw invalid_input_error("realize: domain " + std::to_string(i) +
                                              " corner slot out of range");
                bits |= 1u << (s - 1);
            }
            return bits;
        };
        t.term_mask = slot_bits(dom.member_slots) | slot_bits(dom.trace_slots);
    }
    return tables;
}

void check_geometry(const BgdSystem& sys, const Fractal& f) {
    if (sys.incidence_only)
        throw invalid_input_error("system '" + sys.name +
                                  "' supports counting only; it has no pointwise "
                                  "realization");
    if (f.name != sys.fractal)
        throw invalid_input_error("system '" + sys.name + "' targets fractal '" +
                                  sys.fractal + "', not '" + f.name + "'");
    if (f.letter_count() != sys.letter_count || f.boundary_count() != sys.boundary_count)
        throw invalid_input_error("system '" + sys.name +
                                  "' does not match the fractal's map or corner count");
}

struct Walker {
    const BgdSystem& sys;
    const Fractal& f;
    const VertexSet& vs;
    const std::vector<RoleTable>& roles;
    std::vector<unsigned>* masks;
    std::set<int>* pinned;
    unsigned full_mask = 0;

    void run(int dom, std::size_t base, int remaining, const AffineMap& acc) {
        const RoleTable& table = roles[static_cast<std::size_t>(dom)];
        if (remaining == 0) {
            (*masks)[base] = table.term_mask;
            for (int s : sys.domains[dom].trace_slots)
                pinned->insert(vs.cells[base][static_cast<std::size_t>(s - 1)]);
            return;
        }
        std::size_t stride = 1;
        for (int t = 1; t < remaining; ++t) stride *= static_cast<std::size_t>(sys.letter_count);
        for (int letter = 1; letter <= sys.letter_count; ++letter) {
            const std::size_t child = base + static_cast<std::size_t>(letter - 1) * stride;
            switch (table.role[static_cast<std::size_t>(letter)]) {
                case kInside:
                    for (std::size_t c = child; c < child + stride; ++c)
                        (*masks)[c] = full_mask;
                    break;
                case kOutside:
                    break;
                case kEdge: {
                    const BgdEdge& edge =
                        sys.domains[dom]
                            .edges[static_cast<std::size_t>(
                                table.edge_index[static_cast<std::size_t>(letter)])];
                    const AffineMap next =
                        compose(acc, f.maps[static_cast<std::size_t>(letter - 1)]);
                    for (int s : edge.extra_boundary) {
                        const Pt p = next(f.boundary[static_cast<std::size_t>(s - 1)]);
                        const auto it = vs.index.find(p);
                        if (it == vs.index.end())
                            throw consistency_error(
                                "realize: a pinned corner left the vertex set");
                        pinned->insert(it->second);
                    }
                    run(edge.target, child, remaining - 1, next);
                    break;
                }
                default:
                    break;
            }
        }
    }
};

AffineMap identity_map() {
    return scaling_about(Rational(1), Pt{QuadExt{Rational(0)}, QuadExt{Rational(0)}});
}

double fit_alpha(const std::vector<BigInt>& counts, int k_max, double log_inv_theta) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (int k = std::max(1, k_max - 4); k <= k_max; ++k) {
        if (counts[static_cast<std::size_t>(k)] <= 0) continue;
        xs.push_back(static_cast<double>(k) * log_inv_theta);
        ys.push_back(std::log(counts[static_cast<std::size_t>(k)].convert_to<double>()));
    }
    const std::size_t m = xs.size();
    if (m < 2) return 0.0;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = static_cast<double>(m) * sxx - sx * sx;
    return (static_cast<double>(m) * sxy - sx * sy) / denom;
}

}  // namespace

DomainRealization realize_domain(const BgdSystem& sys, const Fractal& f,
                                 const VertexSet& vs, int domain) {
    check_geometry(sys, f);
    if (domain < 0 || domain >= sys.domain_count())
        throw invalid_input_error("realize: domain index out of range");
    const std::vector<RoleTable> roles = build_roles(sys);
    std::size_t expected_cells = 1;
    for (int t = 0; t < vs.level; ++t)
        expected_cells *= static_cast<std::size_t>(sys.letter_count);
    if (vs.cells.size() != expected_cells ||
        (!vs.cells.empty() &&
         vs.cells[0].size() != static_cast<std::size_t>(sys.boundary_count)))
        throw invalid_input_error("realize: vertex set does not match the system");
    if (vs.level == 0 && roles[static_cast<std::size_t>(domain)].term_mask == 0)
        throw invalid_input_error(
            "realize: level 0 needs at least one member or trace corner in the "
            "starting domain");

    DomainRealization out;
    out.domain = domain;
    out.level = vs.level;
    out.realized_masks.assign(vs.cells.size(), 0u);
    std::set<int> pinned;
    Walker walker{sys, f, vs, roles, &out.realized_masks, &pinned,
                  (1u << sys.boundary_count) - 1u};
    walker.run(domain, 0, vs.level, identity_map());

    std::vector<bool> realized(vs.points.size(), false);
    for (std::size_t c = 0; c < vs.cells.size(); ++c) {
        const unsigned mask = out.realized_masks[c];
        if (mask == 0) continue;
        for (int s = 0; s < sys.boundary_count; ++s)
            if (mask & (1u << s))
                realized[static_cast<std::size_t>(vs.cells[c][static_cast<std::size_t>(s)])] =
                    true;
    }
    for (int id : pinned) {
        out.dirichlet_ids.push_back(id);
        if (!realized[static_cast<std::size_t>(id)]) out.unrealized_boundary.push_back(id);
    }
    for (std::size_t v = 0; v < realized.size(); ++v)
        if (realized[v] && pinned.count(static_cast<int>(v)) == 0)
            out.free_ids.push_back(static_cast<int>(v));
    return out;
}

DomainVertexSets domain_vertices(const BgdSystem& sys, const Fractal& f, int domain,
                                 int level) {
    const VertexSet vs = build_vertex_set(f, level);
    const DomainRealization real = realize_domain(sys, f, vs, domain);
    DomainVertexSets out;
    out.free_points.reserve(real.free_ids.size());
    for (int id : real.free_ids) out.free_points.push_back(vs.points[static_cast<std::size_t>(id)]);
    out.dirichlet_points.reserve(real.dirichlet_ids.size());
    for (int id : real.dirichlet_ids)
        out.dirichlet_points.push_back(vs.points[static_cast<std::size_t>(id)]);
    return out;
}

ConsistencyReport bgd_consistency(const BgdSystem& sys, const Fractal& f, int n_max) {
    check_geometry(sys, f);
    if (n_max < 1) throw invalid_input_error("bgd_consistency: need n_max >= 1");
    const int n_domains = sys.domain_count();
    const std::vector<RoleTable> roles = build_roles(sys);

    VertexSet prev = build_vertex_set(f, 0);
    std::vector<DomainRealization> prev_real;
    for (int i = 0; i < n_domains; ++i)
        prev_real.push_back(realize_domain(sys, f, prev, i));

    ConsistencyReport report;
    for (int n = 1; n <= n_max; ++n) {
        const VertexSet cur = build_vertex_set(f, n);
        std::vector<DomainRealization> cur_real;
        for (int i = 0; i < n_domains; ++i)
            cur_real.push_back(realize_domain(sys, f, cur, i));

        // Id translation of the previous vertex set through each cell map.
        std::vector<std::vector<int>> translate(
            static_cast<std::size_t>(sys.letter_count) + 1);
        for (int k = 1; k <= sys.letter_count; ++k) {
            auto& tr = translate[static_cast<std::size_t>(k)];
            tr.resize(prev.points.size());
            const AffineMap& map = f.maps[static_cast<std::size_t>(k - 1)];
            for (std::size_t v = 0; v < prev.points.size(); ++v) {
                const auto it = cur.index.find(map(prev.points[v]));
                if (it == cur.index.end())
                    throw consistency_error("bgd_consistency: refinement lost a vertex");
                tr[v] = it->second;
            }
        }

        for (int i = 0; i < n_domains && report.pass; ++i) {
            const DomainRealization& real = cur_real[static_cast<std::size_t>(i)];
            std::vector<bool> is_realized(cur.points.size(), false);
            std::vector<bool> is_pinned(cur.points.size(), false);
            std::vector<bool> is_free(cur.points.size(), false);
            for (std::size_t c = 0; c < cur.cells.size(); ++c) {
                const unsigned mask = real.realized_masks[c];
                for (int s = 0; s < sys.boundary_count; ++s)
                    if (mask & (1u << s))
                        is_realized[static_cast<std::size_t>(
                            cur.cells[c][static_cast<std::size_t>(s)])] = true;
            }
            for (int id : real.dirichlet_ids) is_pinned[static_cast<std::size_t>(id)] = true;
            for (int id : real.free_ids) is_free[static_cast<std::size_t>(id)] = true;

            if (!real.unrealized_boundary.empty()) {
                report.pass = false;
                report.level = n;
                report.domain = i;
                report.letter = -1;
                report.detail = "a pinned vertex lies on no realized cell";
                break;
            }

            const RoleTable& table = roles[static_cast<std::size_t>(i)];
            for (int k = 1; k <= sys.letter_count && report.pass; ++k) {
                const auto& tr = translate[static_cast<std::size_t>(k)];
                auto fail = [&](const std::string& what) {
                    report.pass = false;
                    report.level = n;
                    report.domain = i;
                    report.letter = k;
                    report.detail = what;
                };
                switch (table.role[static_cast<std::size_t>(k)]) {
                    case kInside:
                        for (int id : tr) {
                            if (!is_realized[static_cast<std::size_t>(id)]) {
                                fail("inside cell misses a realized vertex");
                                break;
                            }
                            if (is_pinned[static_cast<std::size_t>(id)]) {
                                fail("inside cell contains a pinned vertex");
                                break;
                            }
                        }
                        break;
                    case kOutside:
                        for (int id : tr)
                            if (is_free[static_cast<std::size_t>(id)]) {
                                fail("outside cell contains a free vertex");
                                break;
                            }
                        break;
                    case kEdge: {
                        const BgdEdge& edge =
                            sys.domains[i]
                                .edges[static_cast<std::size_t>(
                                    table.edge_index[static_cast<std::size_t>(k)])];
                        const DomainRealization& tgt =
                            prev_real[static_cast<std::size_t>(edge.target)];
                        std::set<int> expect_realized;
                        std::set<int> expect_pinned;
                        for (std::size_t c = 0; c < prev.cells.size(); ++c) {
                            const unsigned mask = tgt.realized_masks[c];
                            for (int s = 0; s < sys.boundary_count; ++s)
                                if (mask & (1u << s))
                                    expect_realized.insert(
                                        tr[static_cast<std::size_t>(
                                            prev.cells[c][static_cast<std::size_t>(s)])]);
                        }
                        for (int id : tgt.dirichlet_ids)
                            expect_pinned.insert(tr[static_cast<std::size_t>(id)]);
                        for (int s : edge.extra_boundary) {
                            const int id = tr[static_cast<std::size_t>(
                                prev.boundary_ids[static_cast<std::size_t>(s - 1)])];
                            expect_pinned.insert(id);
                            expect_realized.insert(id);
                        }
                        std::set<int> got_realized;
                        std::set<int> got_pinned;
                        for (int id : tr) {
                            if (is_realized[static_cast<std::size_t>(id)])
                                got_realized.insert(id);
                            if (is_pinned[static_cast<std::size_t>(id)]) got_pinned.insert(id);
                        }
                        if (got_realized != expect_realized)
                            fail("realized vertices in the cell differ from the mapped "
                                 "target realization");
                        else if (got_pinned != expect_pinned)
                            fail("pinned vertices in the cell differ from the mapped "
                                 "target boundary");
                        break;
                    }
                    default:
                        break;
                }
            }
        }
        if (!report.pass) return report;
        prev = std::move(cur);
        prev_real = std::move(cur_real);
    }
    return report;
}

WhitneyReport whitney(const BgdSystem& sys, const Fractal& f, int domain, int k_max) {
    if (k_max < 3)
        throw invalid_input_error("whitney: need k_max >= 3 for the exponent fits");
    if (domain < 0 || domain >= sys.domain_count())
        throw invalid_input_error("whitney: domain index out of range");
    if (f.letter_count() != sys.letter_count)
        throw invalid_input_error("whitney: fractal does not match the system");
    for (const Rational& r : f.contraction)
        if (r != f.contraction[0])
            throw invalid_input_error(
                "whitney: exponent fits need a uniform contraction ratio");

    const int n_domains = sys.domain_count();
    std::vector<std::vector<long long>> a(
        static_cast<std::size_t>(n_domains),
        std::vector<long long>(static_cast<std::size_t>(n_domains), 0));
    for (int i = 0; i < n_domains; ++i)
        for (const BgdEdge& e : sys.domains[i].edges)
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(e.target)] += 1;

    WhitneyReport out;
    out.domain = domain;
    out.k_max = k_max;
    out.inner_counts.assign(static_cast<std::size_t>(k_max) + 1, BigInt(0));
    out.boundary_counts.assign(static_cast<std::size_t>(k_max) + 1, BigInt(0));
    out.boundary_counts[0] = 1;
    out.inner_series = Rational(0);

    // walks[j] = number of boundary-crossing letter strings of the current
    // length that lead from `domain` to j.
    std::vector<BigInt> walks(static_cast<std::size_t>(n_domains), BigInt(0));
    walks[static_cast<std::size_t>(domain)] = 1;
    Rational weight(1);
    const Rational inv_n(1, sys.letter_count);
    for (int k = 1; k <= k_max; ++k) {
        weight *= inv_n;
        BigInt inner(0);
        for (int j = 0; j < n_domains; ++j)
            inner += walks[static_cast<std::size_t>(j)] *
                     BigInt(static_cast<long long>(sys.domains[j].inside_letters.size()));
        out.inner_counts[static_cast<std::size_t>(k)] = inner;
        out.inner_series += Rational(inner) * weight;

        std::vector<BigInt> next(static_cast<std::size_t>(n_domains), BigInt(0));
        for (int j = 0; j < n_domains; ++j) {
            if (walks[static_cast<std::size_t>(j)] == 0) continue;
            for (int j2 = 0; j2 < n_domains; ++j2)
                if (a[j][j2] != 0)
                    next[static_cast<std::size_t>(j2)] +=
                        walks[static_cast<std::size_t>(j)] * BigInt(a[j][j2]);
        }
        walks = std::move(next);
        BigInt crossing(0);
        for (const BigInt& w : walks) crossing += w;
        out.boundary_counts[static_cast<std::size_t>(k)] = crossing;
    }

    const double log_inv_theta =
        -std::log(rational_to_double(f.contraction[0]));
    out.alpha_inner = fit_alpha(out.inner_counts, k_max, log_inv_theta);
    out.alpha_boundary = fit_alpha(out.boundary_counts, k_max, log_inv_theta);
    return out;
}

WhitneyReport whitney_by_classifier(const std::function<CellKind(const Word&)>& classify,
                                    int letter_count, const Rational& theta, int k_max) {
    if (k_max < 3)
        throw invalid_input_error("whitney: need k_max >= 3 for the exponent fits");
    if (letter_count < 2) throw invalid_input_error("whitney: alphabet too small");
    if (!(theta > 0 && theta < 1))
        throw invalid_input_error("whitney: contraction ratio must lie in (0,1)");

    WhitneyReport out;
    out.k_max = k_max;
    out.inner_counts.assign(static_cast<std::size_t>(k_max) + 1, BigInt(0));
    out.boundary_counts.assign(static_cast<std::size_t>(k_max) + 1, BigInt(0));
    out.inner_series = Rational(0);

    std::vector<Word> frontier;
    if (classify(Word{}) == CellKind::crossing) {
        frontier.push_back(Word{});
        out.boundary_counts[0] = 1;
    }
    Rational weight(1);
    const Rational inv_n(1, letter_count);
    for (int k = 1; k <= k_max; ++k) {
        weight *= inv_n;
        std::vector<Word> next;
        BigInt inner(0);
        for (const Word& w : frontier) {
            for (int letter = 1; letter <= letter_count; ++letter) {
                Word child;
                child.reserve(w.size() + 1);
                child.push_back(letter);  // innermost first
                child.insert(child.end(), w.begin(), w.end());
                switch (classify(child)) {
                    case CellKind::inside:
                        inner += 1;
                        break;
                    case CellKind::crossing:
                        next.push_back(std::move(child));
                        break;
                    case CellKind::outside:
                        break;
                }
            }
        }
        out.inner_counts[static_cast<std::size_t>(k)] = inner;
        out.inner_series += Rational(inner) * weight;
        out.boundary_counts[static_cast<std::size_t>(k)] =
            BigInt(static_cast<long long>(next.size()));
        frontier = std::move(next);
    }

    const double log_inv_theta = -std::log(rational_to_double(theta));
    out.alpha_inner = fit_alpha(out.inner_counts, k_max, log_inv_theta);
    out.alpha_boundary = fit_alpha(out.boundary_counts, k_max, log_inv_theta);
    return out;
}

}  // namespace fractal_spectra

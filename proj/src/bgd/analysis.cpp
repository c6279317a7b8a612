#include "bgd/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "core/errors.hpp"
#include "core/ratmat.hpp"

namespace fractal_spectra {

namespace {

using BoolMat = std::vector<std::vector<bool>>;

// reach[i][j]: a directed walk of length >= 1 from i to j exists.
BoolMat reachability(const IncidenceMatrix& a) {
    const int n = static_cast<int>(a.size());
    BoolMat reach(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) reach[i][j] = a[i][j] > 0;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            if (!reach[i][k]) continue;
            for (int j = 0; j < n; ++j)
                if (reach[k][j]) reach[i][j] = true;
        }
    return reach;
}

// Spectral radius and two-sided Perron vectors of an irreducible non-negative
// matrix, via power iteration on the primitive shift (matrix + identity) with
// Collatz-Wielandt brackets as the stopping rule.
struct RawPerron {
    double radius = 0.0;
    std::vector<double> right;
    std::vector<double> left;
};

std::vector<double> shifted_apply(const std::vector<std::vector<double>>& m,
                                  const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    std::vector<double> y(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = x[i];
        for (int j = 0; j < n; ++j) acc += m[i][j] * x[j];
        y[i] = acc;
    }
    return y;
}

std::vector<double> power_vector(const std::vector<std::vector<double>>& m,
                                 double* radius_out) {
    const int n = static_cast<int>(m.size());
    std::vector<double> x(n, 1.0);
    double lo = 0.0;
    double hi = std::numeric_limits<double>::max();
    for (int iter = 0; iter < 200000; ++iter) {
        std::vector<double> y = shifted_apply(m, x);
        lo = std::numeric_limits<double>::max();
        hi = 0.0;
        for (int i = 0; i < n; ++i) {
            const double ratio = y[i] / x[i];
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        double norm = 0.0;
        for (double v : y) norm += v;
        for (int i = 0; i < n; ++i) x[i] = y[i] / norm;
        if (hi - lo <= 1e-14 * hi) break;
    }
    if (radius_out != nullptr) *radius_out = 0.5 * (lo + hi) - 1.0;
    return x;
}

RawPerron raw_perron(const IncidenceMatrix& a) {
    const int n = static_cast<int>(a.size());
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    std::vector<std::vector<double>> mt(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            m[i][j] = static_cast<double>(a[i][j]);
            mt[j][i] = m[i][j];
        }
    RawPerron out;
    out.right = power_vector(m, &out.radius);
    double radius_left = 0.0;
    out.left = power_vector(mt, &radius_left);
    return out;
}

// Scale so the left vector has unit l1 norm and left.right = 1.
void normalize_pair(std::vector<double>* right, std::vector<double>* left) {
    double l1 = 0.0;
    for (double v : *left) l1 += std::abs(v);
    for (double& v : *left) v /= l1;
    double dot = 0.0;
    for (std::size_t i = 0; i < left->size(); ++i) dot += (*left)[i] * (*right)[i];
    for (double& v : *right) v /= dot;
}

long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

long long lcm_ll(long long a, long long b) {
    if (a == 0 || b == 0) return a + b;
    return a / std::gcd(a, b) * b;
}

}  // namespace

IncidenceMatrix incidence_matrix(const BgdSystem& sys) {
    const int n = sys.domain_count();
    IncidenceMatrix a(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i)
        for (const BgdEdge& e : sys.domains[i].edges) a[i][e.target] += 1;
    return a;
}

PerronData perron_data(const IncidenceMatrix& a) {
    const int n = static_cast<int>(a.size());
    if (n == 0) throw invalid_input_error("perron_data: empty matrix");
    for (const auto& row : a) {
        if (static_cast<int>(row.size()) != n)
            throw invalid_input_error("perron_data: matrix is not square");
        for (long long v : row)
            if (v < 0) throw invalid_input_error("perron_data: negative entry");
    }
    const BoolMat reach = reachability(a);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!reach[i][j])
                throw invalid_input_error(
                    "perron_data: matrix is reducible; analyze handles the "
                    "per-class decomposition");
    RawPerron raw = raw_perron(a);
    normalize_pair(&raw.right, &raw.left);
    PerronData out;
    out.radius = raw.radius;
    out.right = std::move(raw.right);
    out.left = std::move(raw.left);
    return out;
}

IncidenceAnalysis analyze(const BgdSystem& sys, double gamma) {
    validate_system(sys);
    if (!(gamma > 0.0) || !(gamma < 1.0))
        throw invalid_input_error("analyze: scale factor must lie in (0,1)");

    IncidenceAnalysis out;
    out.matrix = incidence_matrix(sys);
    out.domain_count = sys.domain_count();
    out.gamma = gamma;
    const int n = out.domain_count;
    const IncidenceMatrix& a = out.matrix;
    const BoolMat reach = reachability(a);

    // Communicating classes: mutual access; a domain without a returning walk
    // is a free singleton.
    out.class_of.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        if (out.class_of[i] >= 0) continue;
        const int ci = static_cast<int>(out.classes.size());
        CommClass cls;
        cls.communicating = reach[i][i];
        cls.members.push_back(i);
        out.class_of[i] = ci;
        if (cls.communicating) {
            for (int j = i + 1; j < n; ++j)
                if (out.class_of[j] < 0 && reach[i][j] && reach[j][i]) {
                    cls.members.push_back(j);
                    out.class_of[j] = ci;
                }
        }
        out.classes.push_back(std::move(cls));
    }
    const int class_count = static_cast<int>(out.classes.size());

    // Per-class spectral radius and Perron pair.
    for (CommClass& cls : out.classes) {
        if (!cls.communicating) continue;
        const int m = static_cast<int>(cls.members.size());
        IncidenceMatrix sub(m, std::vector<long long>(m, 0));
        for (int u = 0; u < m; ++u)
            for (int v = 0; v < m; ++v) sub[u][v] = a[cls.members[u]][cls.members[v]];
        RawPerron raw = raw_perron(sub);
        normalize_pair(&raw.right, &raw.left);
        cls.radius = raw.radius;
        cls.perron = std::move(raw.right);
        cls.perron_left = std::move(raw.left);
    }

    out.psi = 0.0;
    for (const CommClass& cls : out.classes) out.psi = std::max(out.psi, cls.radius);
    const int alphabet = sys.letter_count;
    if (out.psi < 1.0 - 1e-9)
        throw consistency_error("analyze: incidence digraph has no cycle");
    if (out.psi > static_cast<double>(alphabet) - 1e-9)
        throw consistency_error(
            "analyze: boundary growth rate reaches the alphabet size; the "
            "domain measures would degenerate");
    out.d = std::log(out.psi) / (-std::log(gamma));

    const double basic_tol = 1e-9 * std::max(1.0, out.psi);
    for (int ci = 0; ci < class_count; ++ci) {
        CommClass& cls = out.classes[ci];
        cls.basic = cls.communicating && std::abs(cls.radius - out.psi) <= basic_tol;
        if (cls.basic) out.basic_classes.push_back(ci);
    }

    // Return periods: the gcd of closed-walk lengths through a domain equals
    // the period of its communicating class, computed exactly as the gcd of
    // level(u)+1-level(v) over the class-internal edges of a breadth-first
    // layering (every closed walk telescopes over that quantity).
    out.return_period.assign(n, 0);
    for (CommClass& cls : out.classes) {
        if (!cls.communicating) continue;
        std::vector<long long> level(n, -1);
        std::vector<int> queue{cls.members.front()};
        level[cls.members.front()] = 0;
        for (std::size_t q = 0; q < queue.size(); ++q) {
            const int u = queue[q];
            for (int v : cls.members)
                if (a[u][v] > 0 && level[v] < 0) {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
        }
        long long g = 0;
        for (int u : cls.members)
            for (int v : cls.members)
                if (a[u][v] > 0) g = gcd_ll(g, std::abs(level[u] + 1 - level[v]));
        cls.period = g;
        for (int i : cls.members) out.return_period[i] = g;
    }
    out.lattice_gcd = 0;
    for (int ci : out.basic_classes)
        out.lattice_gcd = gcd_ll(out.lattice_gcd, out.classes[ci].period);

    // Class-level access: J -> K when some member of J reaches some member of
    // K. Heights count the longest chain of distinct basic classes.
    std::vector<std::vector<bool>> class_reach(class_count,
                                               std::vector<bool>(class_count, false));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (reach[i][j]) class_reach[out.class_of[i]][out.class_of[j]] = true;
    {
        std::vector<int> height_memo(class_count, -2);
        auto height_of = [&](auto&& self, int ci) -> int {
            if (height_memo[ci] != -2) return height_memo[ci];
            int best = 0;
            for (int cj = 0; cj < class_count; ++cj) {
                if (cj == ci || !class_reach[ci][cj] || !out.classes[cj].basic)
                    continue;
                best = std::max(best, self(self, cj) + 1);
            }
            height_memo[ci] = best;
            return best;
        };
        for (int ci : out.basic_classes)
            out.classes[ci].height = height_of(height_of, ci);
    }

    // Per-domain aggregates over the basic classes the domain has access to
    // (its own class counts when the domain lies on a cycle).
    out.chain_height.assign(n, -1);
    out.period_lcm.assign(n, 0);
    for (int j = 0; j < n; ++j) {
        for (int ci : out.basic_classes) {
            bool accesses = false;
            for (int k : out.classes[ci].members)
                if (reach[j][k]) {
                    accesses = true;
                    break;
                }
            if (!accesses) continue;
            out.chain_height[j] = std::max(out.chain_height[j], out.classes[ci].height);
            out.period_lcm[j] = lcm_ll(out.period_lcm[j], out.classes[ci].period);
        }
    }

    // Shortest access times (number of refinement steps), -1 when unreachable.
    out.access_steps.assign(n, std::vector<int>(n, -1));
    for (int s = 0; s < n; ++s) {
        out.access_steps[s][s] = 0;
        std::vector<int> frontier{s};
        int dist = 0;
        while (!frontier.empty()) {
            ++dist;
            std::vector<int> next;
            for (int u : frontier)
                for (int v = 0; v < n; ++v)
                    if (a[u][v] > 0 && out.access_steps[s][v] < 0 && v != s) {
                        out.access_steps[s][v] = dist;
                        next.push_back(v);
                    }
            frontier = std::move(next);
        }
    }

    out.irreducible = class_count == 1 && out.classes[0].communicating;
    if (out.irreducible && std::abs(out.psi - 1.0) <= 1e-9) {
        // An irreducible integer matrix with spectral radius 1 must be a
        // permutation matrix; anything else signals corrupted system data.
        std::vector<int> col_sum(n, 0);
        for (int i = 0; i < n; ++i) {
            long long row_sum = 0;
            for (int j = 0; j < n; ++j) {
                if (a[i][j] != 0 && a[i][j] != 1)
                    throw consistency_error(
                        "analyze: growth rate 1 with a non-binary incidence entry");
                row_sum += a[i][j];
                col_sum[j] += static_cast<int>(a[i][j]);
            }
            if (row_sum != 1)
                throw consistency_error(
                    "analyze: growth rate 1 requires one boundary edge per domain");
        }
        for (int j = 0; j < n; ++j)
            if (col_sum[j] != 1)
                throw consistency_error(
                    "analyze: growth rate 1 requires one incoming edge per domain");
    }

    if (out.irreducible) {
        RawPerron raw = raw_perron(a);
        normalize_pair(&raw.right, &raw.left);
        out.b = std::move(raw.right);
        out.left_vector = std::move(raw.left);
    }

    // Exact domain measures: (alphabet * I - A) c = s with s counting the
    // letters mapping fully inside each domain.
    {
        RatMat lhs = rat_zero(n, n);
        RatMat rhs = rat_zero(n, 1);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j)
                lhs[i][j] = Rational(-a[i][j]);
            lhs[i][i] += Rational(alphabet);
            rhs[i][0] = Rational(
                static_cast<long long>(sys.domains[i].inside_letters.size()));
        }
        const RatMat sol = rat_solve(lhs, rhs);
        out.c.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) out.c.push_back(sol[static_cast<std::size_t>(i)][0]);
    }

    out.boundary_total.assign(n, 0.0);
    for (int ci : out.basic_classes) {
        const CommClass& cls = out.classes[ci];
        for (std::size_t u = 0; u < cls.members.size(); ++u)
            out.boundary_total[cls.members[u]] = cls.perron[u];
    }
    return out;
}

double boundary_measure(const BgdSystem& sys, const IncidenceAnalysis& analysis,
                        int domain, const Word& letters) {
    if (domain < 0 || domain >= analysis.domain_count)
        throw invalid_input_error("boundary_measure: domain index out of range");
    const int ci = analysis.class_of[domain];
    const CommClass& cls = analysis.classes[ci];
    if (!cls.basic)
        throw invalid_input_error(
            "boundary_measure: the domain's class does not attain the growth "
            "rate, so its boundary carries no canonical measure");
    int cur = domain;
    for (int letter : letters) {
        const BgdEdge* found = nullptr;
        for (const BgdEdge& e : sys.domains[cur].edges)
            if (e.letter == letter) {
                found = &e;
                break;
            }
        if (found == nullptr)
            throw invalid_input_error(
                "boundary_measure: letter is not a boundary edge of the "
                "current domain");
        cur = found->target;
        if (analysis.class_of[cur] != ci)
            throw invalid_input_error(
                "boundary_measure: the word leaves the starting domain's "
                "class");
    }
    int local = -1;
    for (std::size_t u = 0; u < cls.members.size(); ++u)
        if (cls.members[u] == cur) local = static_cast<int>(u);
    return std::pow(analysis.psi, -static_cast<double>(letters.size())) *
           cls.perron[local];
}

}  // namespace fractal_spectra

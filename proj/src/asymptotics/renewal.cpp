#include "asymptotics/renewal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <ostream>

#include "core/errors.hpp"

namespace fractal_spectra {

namespace {

using Mat = std::vector<std::vector<double>>;

int check_stride(const RenewalSystem& sys) {
    const double ratio = sys.t_step / sys.grid_step;
    const long long stride = std::llround(ratio);
    if (stride < 1 || std::abs(ratio - static_cast<double>(stride)) > 1e-9 * ratio)
        throw invalid_input_error(
            "renewal grid step must divide the lattice step a whole number of times");
    return static_cast<int>(stride);
}

// Digraph structure of the weight support: mutual-reachability classes, the
// exact per-class growth radius, and the class periods.
struct DigraphInfo {
    int n = 0;
    std::vector<std::vector<bool>> reach;  // by a path of length >= 1
    std::vector<int> class_of;
    std::vector<std::vector<int>> classes;
    std::vector<bool> communicating;
    std::vector<double> class_radius;
    std::vector<long long> class_period;  // 0 for free singletons
    double radius = 0.0;                  // max over classes
};

// Collatz-Wielandt bracket on (A_sub + I): for an irreducible submatrix the
// min/max componentwise ratios pinch the growth radius geometrically.
double irreducible_radius(const Mat& a, const std::vector<int>& members) {
    const int m = static_cast<int>(members.size());
    std::vector<double> w(static_cast<std::size_t>(m), 1.0);
    double lo = 0.0, hi = 0.0;
    for (int it = 0; it < 100000; ++it) {
        std::vector<double> next(static_cast<std::size_t>(m), 0.0);
        for (int i = 0; i < m; ++i) {
            double s = w[static_cast<std::size_t>(i)];
            for (int j = 0; j < m; ++j)
                s += a[static_cast<std::size_t>(members[static_cast<std::size_t>(i)])]
                      [static_cast<std::size_t>(members[static_cast<std::size_t>(j)])] *
                     w[static_cast<std::size_t>(j)];
            next[static_cast<std::size_t>(i)] = s;
        }
        lo = next[0] / w[0];
        hi = lo;
        for (int i = 1; i < m; ++i) {
            const double r = next[static_cast<std::size_t>(i)] / w[static_cast<std::size_t>(i)];
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        const double scale = *std::max_element(next.begin(), next.end());
        for (double& v : next) v /= scale;
        w = std::move(next);
        if (hi - lo <= 1e-13 * hi) break;
    }
    if (hi - lo > 1e-9 * hi)
        throw consistency_error("growth-radius iteration failed to converge");
    return 0.5 * (hi + lo) - 1.0;
}

DigraphInfo build_digraph(const Mat& a) {
    DigraphInfo dg;
    const int n = static_cast<int>(a.size());
    dg.n = n;
    dg.reach.assign(static_cast<std::size_t>(n),
                    std::vector<bool>(static_cast<std::size_t>(n), false));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dg.reach[i][j] = a[i][j] > 0.0;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (dg.reach[i][k])
                for (int j = 0; j < n; ++j)
                    if (dg.reach[k][j]) dg.reach[i][j] = true;

    dg.class_of.assign(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        if (dg.class_of[static_cast<std::size_t>(i)] >= 0) continue;
        const int c = static_cast<int>(dg.classes.size());
        std::vector<int> members{i};
        dg.class_of[static_cast<std::size_t>(i)] = c;
        for (int j = i + 1; j < n; ++j)
            if (dg.class_of[static_cast<std::size_t>(j)] < 0 && dg.reach[i][j] &&
                dg.reach[j][i]) {
                dg.class_of[static_cast<std::size_t>(j)] = c;
                members.push_back(j);
            }
        dg.communicating.push_back(members.size() > 1 || dg.reach[i][i]);
        dg.classes.push_back(std::move(members));
    }

    dg.class_radius.assign(dg.classes.size(), 0.0);
    dg.class_period.assign(dg.classes.size(), 0);
    for (std::size_t c = 0; c < dg.classes.size(); ++c) {
        if (!dg.communicating[c]) continue;
        dg.class_radius[c] = irreducible_radius(a, dg.classes[c]);
        // Class period: gcd of |level(u)+1-level(v)| over intra-class edges of
        // a breadth-first layering (closed walks telescope over it).
        std::vector<long long> level(static_cast<std::size_t>(n), -1);
        std::vector<int> queue{dg.classes[c].front()};
        level[static_cast<std::size_t>(dg.classes[c].front())] = 0;
        for (std::size_t q = 0; q < queue.size(); ++q)
            for (int v : dg.classes[c])
                if (a[static_cast<std::size_t>(queue[q])][static_cast<std::size_t>(v)] > 0.0 &&
                    level[static_cast<std::size_t>(v)] < 0) {
                    level[static_cast<std::size_t>(v)] =
                        level[static_cast<std::size_t>(queue[q])] + 1;
                    queue.push_back(v);
                }
        long long g = 0;
        for (int u : dg.classes[c])
            for (int v : dg.classes[c])
                if (a[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] > 0.0)
                    g = std::gcd(g, std::llabs(level[static_cast<std::size_t>(u)] + 1 -
                                               level[static_cast<std::size_t>(v)]));
        dg.class_period[c] = g;
    }
    dg.radius = 0.0;
    for (double r : dg.class_radius) dg.radius = std::max(dg.radius, r);
    return dg;
}

// First passage times to component 0 (minimum walk length >= 1), via boolean
// support powers; length n always suffices inside an irreducible digraph.
std::vector<long long> first_passage_times(const Mat& a) {
    const int n = static_cast<int>(a.size());
    std::vector<std::vector<bool>> pw(static_cast<std::size_t>(n),
                                      std::vector<bool>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) pw[i][j] = a[i][j] > 0.0;
    std::vector<long long> t(static_cast<std::size_t>(n), -1);
    for (int k = 1; k <= n; ++k) {
        if (k > 1) {
            std::vector<std::vector<bool>> next(
                static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
            for (int i = 0; i < n; ++i)
                for (int l = 0; l < n; ++l)
                    if (pw[i][l])
                        for (int j = 0; j < n; ++j)
                            if (a[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)] > 0.0)
                                next[i][j] = true;
            pw = std::move(next);
        }
        for (int i = 0; i < n; ++i)
            if (t[static_cast<std::size_t>(i)] < 0 && pw[i][0])
                t[static_cast<std::size_t>(i)] = k;
    }
    for (long long v : t)
        if (v < 0)
            throw consistency_error(
                "renewal_limit: a component has no access to component 0");
    return t;
}

void require_decaying_sources(const RenewalSystem& sys, int stride) {
    for (std::size_t i = 0; i < sys.z.size(); ++i) {
        const std::vector<double>& zi = sys.z[i];
        const int chunks =
            static_cast<int>((zi.size() + static_cast<std::size_t>(stride) - 1) /
                             static_cast<std::size_t>(stride));
        if (chunks < 4) continue;
        std::vector<double> sup(static_cast<std::size_t>(chunks), 0.0);
        for (std::size_t k = 0; k < zi.size(); ++k)
            sup[k / static_cast<std::size_t>(stride)] =
                std::max(sup[k / static_cast<std::size_t>(stride)], std::abs(zi[k]));
        const double peak = *std::max_element(sup.begin(), sup.end());
        if (sup.back() > 0.5 * peak)
            throw invalid_input_error(
                "renewal_limit: a source sampled over four or more lattice periods "
                "must decay (last-period sup exceeds half the peak), otherwise the "
                "periodic lattice sums need not converge");
    }
}

struct SolveData {
    int stride = 0;
    int grid_count = 0;
    Mat f;
};

SolveData solve_grid(const RenewalSystem& sys, int horizon_periods) {
    validate_renewal(sys);
    if (horizon_periods < 1)
        throw invalid_input_error("renewal horizon must cover at least one period");
    SolveData out;
    out.stride = check_stride(sys);
    const int n = static_cast<int>(sys.a.size());
    const DigraphInfo dg = build_digraph(sys.a);
    if (dg.radius > 1.0 + 1e-9)
        throw divergence_error(
            "renewal weights have growth radius above 1: the superposition grows "
            "geometrically and admits no bounded solution");
    out.grid_count = horizon_periods * out.stride + 1;

    std::vector<Mat> powers(static_cast<std::size_t>(horizon_periods) + 1);
    powers[0].assign(static_cast<std::size_t>(n),
                     std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) powers[0][i][i] = 1.0;
    for (int k = 1; k <= horizon_periods; ++k) {
        powers[static_cast<std::size_t>(k)].assign(
            static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l) {
                const double w = powers[static_cast<std::size_t>(k) - 1][i][l];
                if (w == 0.0) continue;
                for (int j = 0; j < n; ++j)
                    powers[static_cast<std::size_t>(k)][i][j] += w * sys.a[l][j];
            }
    }

    out.f.assign(static_cast<std::size_t>(n),
                 std::vector<double>(static_cast<std::size_t>(out.grid_count), 0.0));
    for (int g = 0; g < out.grid_count; ++g) {
        const int k_max = std::min(horizon_periods, g / out.stride);
        for (int k = 0; k <= k_max; ++k) {
            const int back = g - k * out.stride;
            for (int j = 0; j < n; ++j) {
                if (static_cast<std::size_t>(back) >= sys.z[static_cast<std::size_t>(j)].size())
                    continue;
                const double zv = sys.z[static_cast<std::size_t>(j)][static_cast<std::size_t>(back)];
                if (zv == 0.0) continue;
                for (int i = 0; i < n; ++i)
                    out.f[static_cast<std::size_t>(i)][static_cast<std::size_t>(g)] +=
                        powers[static_cast<std::size_t>(k)][i][j] * zv;
            }
        }
    }
    return out;
}

double recursion_residual(const RenewalSystem& sys, const SolveData& sol) {
    const int n = static_cast<int>(sys.a.size());
    double sup = 0.0;
    for (const std::vector<double>& row : sol.f)
        for (double v : row) sup = std::max(sup, std::abs(v));
    double worst = 0.0;
    for (int g = 0; g < sol.grid_count; ++g)
        for (int i = 0; i < n; ++i) {
            double expect = 0.0;
            if (g >= sol.stride)
                for (int j = 0; j < n; ++j)
                    expect += sys.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                              sol.f[static_cast<std::size_t>(j)]
                                   [static_cast<std::size_t>(g - sol.stride)];
            if (static_cast<std::size_t>(g) < sys.z[static_cast<std::size_t>(i)].size())
                expect += sys.z[static_cast<std::size_t>(i)][static_cast<std::size_t>(g)];
            worst = std::max(worst,
                             std::abs(sol.f[static_cast<std::size_t>(i)][static_cast<std::size_t>(g)] -
                                      expect));
        }
    return worst / std::max(1.0, sup);
}

// Right and left unit-growth eigenvectors by power iteration on (A + I).
void perron_vectors(const Mat& a, std::vector<double>& right,
                    std::vector<double>& left) {
    const int n = static_cast<int>(a.size());
    right.assign(static_cast<std::size_t>(n), 1.0);
    left.assign(static_cast<std::size_t>(n), 1.0);
    for (int it = 0; it < 100000; ++it) {
        std::vector<double> nr(static_cast<std::size_t>(n), 0.0);
        std::vector<double> nl(static_cast<std::size_t>(n), 0.0);
        for (int i = 0; i < n; ++i) {
            nr[static_cast<std::size_t>(i)] = right[static_cast<std::size_t>(i)];
            nl[static_cast<std::size_t>(i)] = left[static_cast<std::size_t>(i)];
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                nr[static_cast<std::size_t>(i)] +=
                    a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                    right[static_cast<std::size_t>(j)];
                nl[static_cast<std::size_t>(j)] +=
                    a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                    left[static_cast<std::size_t>(i)];
            }
        double sr = 0.0, sl = 0.0;
        for (double v : nr) sr = std::max(sr, v);
        for (double v : nl) sl = std::max(sl, v);
        double delta = 0.0;
        for (int i = 0; i < n; ++i) {
            nr[static_cast<std::size_t>(i)] /= sr;
            nl[static_cast<std::size_t>(i)] /= sl;
            delta = std::max(delta, std::abs(nr[static_cast<std::size_t>(i)] -
                                             right[static_cast<std::size_t>(i)]));
            delta = std::max(delta, std::abs(nl[static_cast<std::size_t>(i)] -
                                             left[static_cast<std::size_t>(i)]));
        }
        right = std::move(nr);
        left = std::move(nl);
        if (delta < 1e-15) break;
    }
}

}  // namespace

void validate_renewal(const RenewalSystem& sys) {
    const std::size_t n = sys.a.size();
    if (n == 0)
        throw invalid_input_error("renewal system needs at least one component");
    for (const std::vector<double>& row : sys.a) {
        if (row.size() != n)
            throw invalid_input_error("renewal weight matrix must be square");
        for (double v : row)
            if (!std::isfinite(v) || v < 0.0)
                throw invalid_input_error(
                    "renewal weights must be finite and non-negative");
    }
    if (!(sys.t_step > 0.0) || !std::isfinite(sys.t_step))
        throw invalid_input_error("renewal lattice step must be positive");
    if (!(sys.grid_step > 0.0) || !std::isfinite(sys.grid_step))
        throw invalid_input_error("renewal grid step must be positive");
    check_stride(sys);
    if (sys.z.size() != n)
        throw invalid_input_error("renewal system needs one source per component");
    for (const std::vector<double>& zi : sys.z)
        for (double v : zi)
            if (!std::isfinite(v))
                throw invalid_input_error("renewal sources must be finite");
}

RenewalSolution renewal_solve(const RenewalSystem& sys, int horizon_periods) {
    const SolveData data = solve_grid(sys, horizon_periods);
    RenewalSolution out;
    out.grid_step = sys.grid_step;
    out.f = data.f;
    out.residual = recursion_residual(sys, data);
    return out;
}

RenewalLimit renewal_limit(const RenewalSystem& sys, int horizon_periods) {
    validate_renewal(sys);
    const int stride = check_stride(sys);
    const int n = static_cast<int>(sys.a.size());
    const DigraphInfo dg = build_digraph(sys.a);
    if (dg.classes.size() != 1 || !dg.communicating[0])
        throw invalid_input_error(
            "renewal_limit: the weight digraph must be irreducible; "
            "block-triangular families have component-dependent growth degrees "
            "and go through reducible_growth");
    if (std::abs(dg.radius - 1.0) > 1e-9)
        throw invalid_input_error(
            "renewal_limit: the weight radius must be 1; radius r scales the "
            "solution like r^(x/T), so rescale the weights before taking limits");
    require_decaying_sources(sys, stride);

    RenewalLimit out;
    out.rho = dg.class_period[0];
    out.t_access = first_passage_times(sys.a);

    std::vector<double> u, v;
    perron_vectors(sys.a, u, v);
    double vu = 0.0;
    for (int i = 0; i < n; ++i)
        vu += v[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)];
    out.b.assign(static_cast<std::size_t>(n),
                 std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)] /
                (sys.t_step * vu);

    const SolveData data = solve_grid(sys, horizon_periods);
    const int window = static_cast<int>(out.rho) * stride;
    long long t_max = 0;
    for (long long t : out.t_access) t_max = std::max(t_max, t);

    // Lattice sums: Z_j at grid index g depends only on the residue of
    // g + t_j * stride modulo the window length.
    std::vector<std::vector<double>> lattice_sum(
        static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(window), 0.0));
    for (int j = 0; j < n; ++j)
        for (std::size_t k = 0; k < sys.z[static_cast<std::size_t>(j)].size(); ++k)
            lattice_sum[static_cast<std::size_t>(j)][k % static_cast<std::size_t>(window)] +=
                sys.z[static_cast<std::size_t>(j)][k];

    const int usable =
        static_cast<int>((static_cast<long long>(horizon_periods) - t_max) /
                         out.rho);
    if (usable < 4)
        throw invalid_input_error(
            "renewal_limit: horizon too short; at least four lattice windows must "
            "fit beyond the access shifts");
    out.period_max.assign(static_cast<std::size_t>(usable), 0.0);
    const double scale = static_cast<double>(out.rho) * sys.t_step;
    for (int q = 0; q < usable; ++q) {
        double worst = 0.0;
        for (int g = q * window; g < (q + 1) * window; ++g) {
            for (int i = 0; i < n; ++i) {
                const int shifted =
                    g + static_cast<int>(out.t_access[static_cast<std::size_t>(i)]) * stride;
                double limit = 0.0;
                for (int j = 0; j < n; ++j) {
                    const int res = static_cast<int>(
                        (static_cast<long long>(g) +
                         out.t_access[static_cast<std::size_t>(j)] * stride) %
                        window);
                    limit += out.b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                             lattice_sum[static_cast<std::size_t>(j)][static_cast<std::size_t>(res)];
                }
                limit *= scale;
                const double dev =
                    std::abs(data.f[static_cast<std::size_t>(i)][static_cast<std::size_t>(shifted)] -
                             limit);
                worst = std::max(worst, dev);
            }
        }
        out.period_max[static_cast<std::size_t>(q)] = worst;
    }
    for (int q = std::max(0, usable - 3); q < usable; ++q)
        out.deviation = std::max(out.deviation, out.period_max[static_cast<std::size_t>(q)]);
    return out;
}

GrowthReport reducible_growth(const RenewalSystem& sys, int domain,
                              int horizon_periods) {
    validate_renewal(sys);
    const int stride = check_stride(sys);
    const int n = static_cast<int>(sys.a.size());
    if (domain < 0 || domain >= n)
        throw invalid_input_error("reducible_growth: domain index out of range");
    const DigraphInfo dg = build_digraph(sys.a);
    if (std::abs(dg.radius - 1.0) > 1e-6)
        throw invalid_input_error(
            "reducible_growth: the overall weight radius must be 1; rescale the "
            "weights so the dominant blocks sit at unit growth");

    // Richest chain of unit-growth blocks along support paths out of each
    // class (the class itself included).
    const int classes = static_cast<int>(dg.classes.size());
    std::vector<bool> basic(static_cast<std::size_t>(classes));
    for (int c = 0; c < classes; ++c)
        basic[static_cast<std::size_t>(c)] =
            dg.communicating[static_cast<std::size_t>(c)] &&
            dg.class_radius[static_cast<std::size_t>(c)] >= 1.0 - 1e-6;
    std::vector<int> best(static_cast<std::size_t>(classes), -1);
    const std::function<int(int)> chain = [&](int c) -> int {
        if (best[static_cast<std::size_t>(c)] >= 0)
            return best[static_cast<std::size_t>(c)];
        int deepest = 0;
        for (int s = 0; s < classes; ++s) {
            if (s == c) continue;
            bool edge = false;
            for (int uu : dg.classes[static_cast<std::size_t>(c)]) {
                for (int vv : dg.classes[static_cast<std::size_t>(s)])
                    if (sys.a[static_cast<std::size_t>(uu)][static_cast<std::size_t>(vv)] > 0.0) {
                        edge = true;
                        break;
                    }
                if (edge) break;
            }
            if (edge) deepest = std::max(deepest, chain(s));
        }
        best[static_cast<std::size_t>(c)] =
            deepest + (basic[static_cast<std::size_t>(c)] ? 1 : 0);
        return best[static_cast<std::size_t>(c)];
    };

    GrowthReport rep;
    rep.domain = domain;
    const int c0 = dg.class_of[static_cast<std::size_t>(domain)];
    rep.m_expected = chain(c0) - 1;
    rep.reaches_basic = rep.m_expected >= 0;

    long long rho = 0;
    for (int c = 0; c < classes; ++c) {
        if (!basic[static_cast<std::size_t>(c)]) continue;
        const int rep_member = dg.classes[static_cast<std::size_t>(c)].front();
        const bool reachable =
            c == c0 || dg.reach[static_cast<std::size_t>(domain)][static_cast<std::size_t>(rep_member)];
        if (!reachable) continue;
        rho = rho == 0 ? dg.class_period[static_cast<std::size_t>(c)]
                       : std::lcm(rho, dg.class_period[static_cast<std::size_t>(c)]);
    }
    rep.rho_j = rho;

    if (!rep.reaches_basic) {
        rep.tends_to_zero = true;
        return rep;
    }

    const SolveData data = solve_grid(sys, horizon_periods);
    const int window = static_cast<int>(rho) * stride;
    const int total = horizon_periods / static_cast<int>(rho);
    const int start = total / 2;
    if (total - start < 4) {
        rep.inconclusive = true;
        return rep;
    }

    std::vector<double> log_t, log_m;
    for (int q = start; q < total; ++q) {
        double peak = 0.0;
        for (int g = q * window; g < (q + 1) * window; ++g)
            peak = std::max(peak, std::abs(data.f[static_cast<std::size_t>(domain)]
                                                 [static_cast<std::size_t>(g)]));
        if (peak <= 0.0) continue;
        log_t.push_back(std::log((static_cast<double>(q) + 0.5) *
                                 static_cast<double>(rho) * sys.t_step));
        log_m.push_back(std::log(peak));
    }
    if (log_t.size() < 4) {
        rep.inconclusive = true;
        return rep;
    }
    double mt = 0.0, mm = 0.0;
    for (std::size_t k = 0; k < log_t.size(); ++k) {
        mt += log_t[k];
        mm += log_m[k];
    }
    mt /= static_cast<double>(log_t.size());
    mm /= static_cast<double>(log_t.size());
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < log_t.size(); ++k) {
        sxx += (log_t[k] - mt) * (log_t[k] - mt);
        sxy += (log_t[k] - mt) * (log_m[k] - mm);
    }
    rep.m_fitted = sxy / sxx;

    std::vector<double> xs, ys;
    for (int g = start * window; g < total * window; ++g) {
        const double x = static_cast<double>(g) * sys.grid_step;
        xs.push_back(x);
        ys.push_back(data.f[static_cast<std::size_t>(domain)][static_cast<std::size_t>(g)] /
                     std::pow(x, static_cast<double>(rep.m_expected)));
    }
    // The grid offers only rho*stride distinct phases per fold period, so a
    // finer binning would leave gaps.
    rep.profile = fold_profile(xs, ys, static_cast<double>(rho) * sys.t_step,
                               std::min(64, window));
    return rep;
}

void write_renewal_csv(const RenewalSolution& sol, std::ostream& out) {
    out << "x";
    for (std::size_t i = 1; i <= sol.f.size(); ++i) out << ",f_" << i;
    out << '\n';
    out.precision(17);
    const std::size_t count = sol.f.empty() ? 0 : sol.f.front().size();
    for (std::size_t k = 0; k < count; ++k) {
        out << static_cast<double>(k) * sol.grid_step;
        for (const std::vector<double>& row : sol.f) out << ',' << row[k];
        out << '\n';
    }
}

}  // namespace fractal_spectra

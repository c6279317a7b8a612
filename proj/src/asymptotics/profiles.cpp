#include "asymptotics/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "core/errors.hpp"
#include "core/rational.hpp"

namespace fractal_spectra {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> t_linspace(double t_lo, double t_hi, int n) {
    std::vector<double> ts(static_cast<std::size_t>(n));
    const double step = (t_hi - t_lo) / static_cast<double>(n - 1);
    for (int k = 0; k < n; ++k) ts[static_cast<std::size_t>(k)] = t_lo + step * k;
    return ts;
}

void check_window(double x_lo, double x_hi, int grid_points, int bins) {
    if (!(x_lo > 0.0) || !(x_hi > x_lo))
        throw invalid_input_error("profile window must satisfy 0 < x_lo < x_hi");
    if (bins < 2) throw invalid_input_error("profile fold needs at least 2 bins");
    if (grid_points < 2 * bins)
        throw invalid_input_error("profile grid too coarse for the bin count");
}

// Shortest access time to domain 0 through the support digraph, including the
// first return for domain 0 itself.
std::vector<long long> access_to_first(const IncidenceMatrix& a) {
    const int n = static_cast<int>(a.size());
    std::vector<std::vector<bool>> pow_k(static_cast<std::size_t>(n),
                                         std::vector<bool>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) pow_k[i][j] = a[i][j] > 0;
    std::vector<long long> t(static_cast<std::size_t>(n), -1);
    for (int k = 1; k <= n; ++k) {
        if (k > 1) {
            std::vector<std::vector<bool>> next(
                static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
            for (int i = 0; i < n; ++i)
                for (int l = 0; l < n; ++l)
                    if (pow_k[i][l])
                        for (int j = 0; j < n; ++j)
                            if (a[l][j] > 0) next[i][j] = true;
            pow_k = std::move(next);
        }
        for (int i = 0; i < n; ++i)
            if (t[static_cast<std::size_t>(i)] < 0 && pow_k[i][0])
                t[static_cast<std::size_t>(i)] = k;
    }
    for (int i = 0; i < n; ++i)
        if (t[static_cast<std::size_t>(i)] < 0)
            throw consistency_error(
                "second_profile: a domain has no access to the first domain");
    return t;
}

}  // namespace

double PeriodicProfile::bin_center(int b) const {
    return period * (static_cast<double>(b) + 0.5) / static_cast<double>(bins());
}

double PeriodicProfile::eval(double t) const {
    const int m = bins();
    double frac = std::fmod(t, period);
    if (frac < 0.0) frac += period;
    int b = static_cast<int>(frac / period * m);
    b = std::clamp(b, 0, m - 1);
    return means[static_cast<std::size_t>(b)];
}

void validate_profile(const PeriodicProfile& p) {
    if (!(p.period > 0.0)) throw invalid_input_error("profile period must be positive");
    if (p.means.empty() || p.means.size() != p.stds.size() ||
        p.means.size() != p.counts.size())
        throw invalid_input_error("profile bin vectors are inconsistent");
    if (!(p.fold_residual >= 0.0))
        throw invalid_input_error("profile fold residual must be non-negative");
    for (std::size_t b = 0; b < p.means.size(); ++b) {
        if (p.counts[b] > 0 && !std::isfinite(p.means[b]))
            throw invalid_input_error("profile has a non-finite covered bin");
    }
}

PeriodicProfile fold_profile(const std::vector<double>& ts,
                             const std::vector<double>& ys, double period,
                             int bins) {
    if (!(period > 0.0)) throw invalid_input_error("fold period must be positive");
    if (bins < 1) throw invalid_input_error("fold needs at least one bin");
    if (ts.size() != ys.size() || ts.empty())
        throw invalid_input_error("fold needs matching non-empty samples");

    long long per_min = std::numeric_limits<long long>::max();
    long long per_max = std::numeric_limits<long long>::min();
    for (double t : ts) {
        const long long p = static_cast<long long>(std::floor(t / period));
        per_min = std::min(per_min, p);
        per_max = std::max(per_max, p);
    }
    const int periods = static_cast<int>(per_max - per_min + 1);

    // Per-(bin, period) sample means.
    std::vector<std::vector<double>> sums(static_cast<std::size_t>(bins),
                                          std::vector<double>(static_cast<std::size_t>(periods), 0.0));
    std::vector<std::vector<long long>> cnts(
        static_cast<std::size_t>(bins),
        std::vector<long long>(static_cast<std::size_t>(periods), 0));
    for (std::size_t k = 0; k < ts.size(); ++k) {
        double frac = std::fmod(ts[k], period);
        if (frac < 0.0) frac += period;
        int b = static_cast<int>(frac / period * bins);
        b = std::clamp(b, 0, bins - 1);
        const long long p = static_cast<long long>(std::floor(ts[k] / period)) - per_min;
        sums[static_cast<std::size_t>(b)][static_cast<std::size_t>(p)] += ys[k];
        cnts[static_cast<std::size_t>(b)][static_cast<std::size_t>(p)] += 1;
    }

    PeriodicProfile out;
    out.period = period;
    out.means.assign(static_cast<std::size_t>(bins), kNaN);
    out.stds.assign(static_cast<std::size_t>(bins), 0.0);
    out.counts.assign(static_cast<std::size_t>(bins), 0);
    bool any = false;
    double lo = 0.0, hi = 0.0, total = 0.0;
    int covered = 0;
    for (int b = 0; b < bins; ++b) {
        std::vector<double> period_means;
        for (int p = 0; p < periods; ++p)
            if (cnts[static_cast<std::size_t>(b)][static_cast<std::size_t>(p)] > 0)
                period_means.push_back(
                    sums[static_cast<std::size_t>(b)][static_cast<std::size_t>(p)] /
                    static_cast<double>(cnts[static_cast<std::size_t>(b)][static_cast<std::size_t>(p)]));
        if (period_means.empty()) continue;
        double mean = 0.0;
        for (double v : period_means) mean += v;
        mean /= static_cast<double>(period_means.size());
        double var = 0.0;
        for (double v : period_means) var += (v - mean) * (v - mean);
        var /= static_cast<double>(period_means.size());
        out.means[static_cast<std::size_t>(b)] = mean;
        out.stds[static_cast<std::size_t>(b)] = std::sqrt(var);
        out.counts[static_cast<std::size_t>(b)] = static_cast<int>(period_means.size());
        out.fold_residual = std::max(out.fold_residual, out.stds[static_cast<std::size_t>(b)]);
        if (!any) {
            lo = hi = mean;
            any = true;
        } else {
            lo = std::min(lo, mean);
            hi = std::max(hi, mean);
        }
        total += mean;
        ++covered;
    }
    if (!any) throw invalid_input_error("fold produced no covered bins");
    out.min_value = lo;
    out.max_value = hi;
    out.mean_value = total / static_cast<double>(covered);
    return out;
}

PeriodicProfile leading_profile(const Spectrum& spectrum, double d_s,
                                double t_period, double x_lo, double x_hi,
                                int grid_points, int bins) {
    if (spectrum.values.empty())
        throw invalid_input_error("leading_profile: empty spectrum");
    if (!(d_s > 0.0) || !(t_period > 0.0))
        throw invalid_input_error("leading_profile: exponent and period must be positive");
    check_window(x_lo, x_hi, grid_points, bins);
    const double t_lo = std::log(x_lo) / 2.0;
    const double t_hi = std::log(x_hi) / 2.0;
    if (t_hi - t_lo < 4.0 * t_period - 1e-12)
        throw invalid_input_error(
            "leading_profile: window spans fewer than four periods");
    const CountingFunction rho(spectrum);
    const std::vector<double> ts = t_linspace(t_lo, t_hi, grid_points);
    std::vector<double> ys(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const double x = std::exp(2.0 * ts[k]);
        ys[k] = rho(x) * std::pow(x, -d_s / 2.0);
    }
    return fold_profile(ts, ys, t_period, bins);
}

std::function<double(double)> profile_leading_term(const PeriodicProfile& g,
                                                   double d_s) {
    validate_profile(g);
    PeriodicProfile copy = g;
    return [copy, d_s](double x) {
        return copy.eval(std::log(x) / 2.0) * std::pow(x, d_s / 2.0);
    };
}

SecondProfileReport second_profile(const std::vector<DomainCountingInput>& inputs,
                                   const IncidenceAnalysis& analysis, double d_s,
                                   double d, double t_period, int grid_points,
                                   int bins) {
    const int n = analysis.domain_count;
    if (static_cast<int>(inputs.size()) != n)
        throw invalid_input_error("second_profile: one input per domain required");
    if (!(t_period > 0.0) || !(d_s > 0.0))
        throw invalid_input_error("second_profile: period and exponents must be positive");
    for (const DomainCountingInput& in : inputs) {
        if (in.spectrum == nullptr || !in.leading)
            throw invalid_input_error("second_profile: missing spectrum or reference");
        if (in.spectrum->values.empty())
            throw invalid_input_error("second_profile: empty spectrum");
        check_window(in.x_lo, in.x_hi, grid_points, bins);
    }

    SecondProfileReport out;
    const bool unit_rate = std::abs(analysis.psi - 1.0) <= 1e-9;
    if (!unit_rate && !analysis.irreducible)
        throw invalid_input_error(
            "second_profile: reducible family with growth rate above 1 has "
            "domain-dependent degrees; use the reducible growth report");

    if (unit_rate) {
        // The correction term is O(1): report its sup over the windows.
        out.bounded_mode = true;
        for (int i = 0; i < n; ++i) {
            const DomainCountingInput& in = inputs[static_cast<std::size_t>(i)];
            const CountingFunction rho(*in.spectrum);
            const double ci = rational_to_double(analysis.c[static_cast<std::size_t>(i)]);
            const std::vector<double> ts = t_linspace(std::log(in.x_lo) / 2.0,
                                                      std::log(in.x_hi) / 2.0, grid_points);
            for (double t : ts) {
                const double x = std::exp(2.0 * t);
                out.sup_phi = std::max(out.sup_phi, std::abs(rho(x) - ci * in.leading(x)));
            }
        }
        return out;
    }

    if (!(d > 0.0)) throw invalid_input_error("second_profile: d must be positive");
    const std::vector<long long> t_first = access_to_first(analysis.matrix);
    out.fold_period = static_cast<double>(analysis.lattice_gcd) * t_period;
    out.domains.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const DomainCountingInput& in = inputs[static_cast<std::size_t>(i)];
        const double t_lo = std::log(in.x_lo) / 2.0;
        const double t_hi = std::log(in.x_hi) / 2.0;
        if (t_hi - t_lo < out.fold_period - 1e-12)
            throw invalid_input_error(
                "second_profile: window shorter than the fold period");
        const CountingFunction rho(*in.spectrum);
        const double ci = rational_to_double(analysis.c[static_cast<std::size_t>(i)]);
        const double bi = analysis.b[static_cast<std::size_t>(i)];
        const double shift =
            static_cast<double>(t_first[static_cast<std::size_t>(i)]) * t_period;
        const std::vector<double> ts = t_linspace(t_lo, t_hi, grid_points);
        std::vector<double> shifted(ts.size());
        std::vector<double> ys(ts.size());
        for (std::size_t k = 0; k < ts.size(); ++k) {
            const double x = std::exp(2.0 * ts[k]);
            const double phi = rho(x) - ci * in.leading(x);
            ys[k] = phi * std::pow(x, -d / 2.0) / bi;
            shifted[k] = ts[k] - shift;
        }
        out.shifts.push_back(shift);
        out.domains.push_back(fold_profile(shifted, ys, out.fold_period, bins));
    }

    // Consensus: bin-wise mean over covering domains; spread kept conservative.
    PeriodicProfile& c = out.consensus;
    c.period = out.fold_period;
    c.means.assign(static_cast<std::size_t>(bins), kNaN);
    c.stds.assign(static_cast<std::size_t>(bins), 0.0);
    c.counts.assign(static_cast<std::size_t>(bins), 0);
    bool any = false;
    double total = 0.0;
    int covered = 0;
    for (int b = 0; b < bins; ++b) {
        double sum = 0.0, spread = 0.0;
        int over = 0;
        for (const PeriodicProfile& p : out.domains) {
            if (p.counts[static_cast<std::size_t>(b)] == 0) continue;
            sum += p.means[static_cast<std::size_t>(b)];
            spread = std::max(spread, p.stds[static_cast<std::size_t>(b)]);
            ++over;
        }
        if (over == 0) continue;
        const double mean = sum / static_cast<double>(over);
        c.means[static_cast<std::size_t>(b)] = mean;
        c.stds[static_cast<std::size_t>(b)] = spread;
        c.counts[static_cast<std::size_t>(b)] = over;
        c.fold_residual = std::max(c.fold_residual, spread);
        if (!any) {
            c.min_value = c.max_value = mean;
            any = true;
        } else {
            c.min_value = std::min(c.min_value, mean);
            c.max_value = std::max(c.max_value, mean);
        }
        total += mean;
        ++covered;
    }
    if (any) c.mean_value = total / static_cast<double>(covered);

    for (std::size_t i = 0; i < out.domains.size(); ++i)
        for (std::size_t j = i + 1; j < out.domains.size(); ++j)
            for (int b = 0; b < bins; ++b) {
                const PeriodicProfile& pi = out.domains[i];
                const PeriodicProfile& pj = out.domains[j];
                if (pi.counts[static_cast<std::size_t>(b)] == 0 ||
                    pj.counts[static_cast<std::size_t>(b)] == 0)
                    continue;
                out.max_pairwise_gap =
                    std::max(out.max_pairwise_gap,
                             std::abs(pi.means[static_cast<std::size_t>(b)] -
                                      pj.means[static_cast<std::size_t>(b)]));
            }
    return out;
}

BracketingReport verify_bracketing(const std::vector<Spectrum>& upper,
                                   const std::vector<Spectrum>& lower,
                                   const IncidenceMatrix& a,
                                   const std::vector<long long>& inside_counts,
                                   const Spectrum& base_lower, double gamma,
                                   double bound, double x_lo, double x_hi,
                                   int grid_points) {
    const int n = static_cast<int>(a.size());
    if (n == 0 || upper.size() != static_cast<std::size_t>(n) ||
        lower.size() != static_cast<std::size_t>(n) ||
        inside_counts.size() != static_cast<std::size_t>(n))
        throw invalid_input_error("verify_bracketing: family sizes disagree");
    if (!(gamma > 0.0) || gamma > 1.0)
        throw invalid_input_error("verify_bracketing: gamma must lie in (0, 1]");
    if (!(x_lo > 0.0) || !(x_hi > x_lo) || grid_points < 2)
        throw invalid_input_error("verify_bracketing: bad grid window");
    for (int i = 0; i < n; ++i) {
        if (upper[static_cast<std::size_t>(i)].level !=
            lower[static_cast<std::size_t>(i)].level + 1)
            throw invalid_input_error(
                "verify_bracketing: domain spectra must sit one level apart");
        if (base_lower.level != lower[static_cast<std::size_t>(i)].level)
            throw invalid_input_error(
                "verify_bracketing: base spectrum level must match the lower level");
    }

    std::vector<CountingFunction> rho_up, rho_lo;
    rho_up.reserve(static_cast<std::size_t>(n));
    rho_lo.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        rho_up.emplace_back(upper[static_cast<std::size_t>(i)]);
        rho_lo.emplace_back(lower[static_cast<std::size_t>(i)]);
    }
    const CountingFunction rho_base(base_lower);

    BracketingReport out;
    out.bound = bound;
    out.per_domain_max.assign(static_cast<std::size_t>(n), 0.0);
    out.grid.resize(static_cast<std::size_t>(grid_points));
    out.defect.assign(static_cast<std::size_t>(n),
                      std::vector<double>(static_cast<std::size_t>(grid_points), 0.0));
    const double lstep = (std::log(x_hi) - std::log(x_lo)) / (grid_points - 1);
    for (int k = 0; k < grid_points; ++k) {
        const double x = std::exp(std::log(x_lo) + lstep * k);
        out.grid[static_cast<std::size_t>(k)] = x;
        const double xs = gamma * gamma * x;
        for (int i = 0; i < n; ++i) {
            double expect = static_cast<double>(
                                inside_counts[static_cast<std::size_t>(i)]) *
                            rho_base(xs);
            for (int j = 0; j < n; ++j)
                if (a[i][j] != 0)
                    expect += static_cast<double>(a[i][j]) *
                              rho_lo[static_cast<std::size_t>(j)](xs);
            const double defect = rho_up[static_cast<std::size_t>(i)](x) - expect;
            out.defect[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = defect;
            const double mag = std::abs(defect);
            out.per_domain_max[static_cast<std::size_t>(i)] =
                std::max(out.per_domain_max[static_cast<std::size_t>(i)], mag);
            if (mag > out.max_abs) {
                out.max_abs = mag;
                out.argmax_domain = i;
                out.argmax_x = x;
            }
        }
    }
    out.excess = out.max_abs - bound;
    return out;
}

void write_profile_csv(const PeriodicProfile& p, std::ostream& out) {
    out << "bin_center_t,mean,std,n_samples\n";
    out.precision(17);
    for (int b = 0; b < p.bins(); ++b) {
        out << p.bin_center(b) << ',' << p.means[static_cast<std::size_t>(b)] << ','
            << p.stds[static_cast<std::size_t>(b)] << ','
            << p.counts[static_cast<std::size_t>(b)] << '\n';
    }
}

}  // namespace fractal_spectra

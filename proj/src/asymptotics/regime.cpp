#include "asymptotics/regime.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "core/errors.hpp"

namespace fractal_spectra {

namespace {

// Best rational approximation p/q with q <= max_den via the continued
// fraction of x; fails when no convergent lands within tol of x.
std::pair<long long, long long> rationalize(double x, long long max_den,
                                            double tol) {
    long long p_prev = 1, q_prev = 0;  // convergent h_{-1}/k_{-1}
    long long p_best = 0, q_best = 0;
    double v = x;
    long long p_acc = 0, q_acc = 1;  // convergent h_{-2}/k_{-2}
    for (int it = 0; it < 64; ++it) {
        const double a_floor = std::floor(v);
        if (a_floor > 1e15) break;
        const long long a = static_cast<long long>(a_floor);
        const long long p_next = a * p_prev + p_acc;
        const long long q_next = a * q_prev + q_acc;
        if (q_next > max_den) break;
        p_acc = p_prev;
        q_acc = q_prev;
        p_prev = p_next;
        q_prev = q_next;
        p_best = p_next;
        q_best = q_next;
        const double approx = static_cast<double>(p_next) / static_cast<double>(q_next);
        if (std::abs(x - approx) <= tol * std::max(1.0, std::abs(x)))
            return {p_best, q_best};
        const double frac = v - a_floor;
        if (frac < 1e-15) break;
        v = 1.0 / frac;
    }
    if (q_best >= 1) {
        const double approx = static_cast<double>(p_best) / static_cast<double>(q_best);
        if (std::abs(x - approx) <= tol * std::max(1.0, std::abs(x)))
            return {p_best, q_best};
    }
    throw invalid_input_error(
        "remainder_regime: contraction ratios are not commensurable on a "
        "lattice (log-ratio has no small-denominator rational form)");
}

}  // namespace

std::vector<std::complex<double>> polynomial_roots(
    const std::vector<double>& coeffs) {
    std::vector<double> c = coeffs;
    while (!c.empty() && c.back() == 0.0) c.pop_back();
    if (c.empty())
        throw invalid_input_error("polynomial_roots: the zero polynomial");
    const int deg = static_cast<int>(c.size()) - 1;
    if (deg == 0) return {};
    std::vector<std::complex<double>> monic(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) monic[k] = c[k] / c.back();
    const auto eval = [&](std::complex<double> z) {
        std::complex<double> r = monic.back();
        for (int k = deg - 1; k >= 0; --k) r = r * z + monic[static_cast<std::size_t>(k)];
        return r;
    };
    std::vector<std::complex<double>> roots(static_cast<std::size_t>(deg));
    const std::complex<double> seed(0.4, 0.9);
    std::complex<double> power = 1.0;
    for (int k = 0; k < deg; ++k) {
        power *= seed;
        roots[static_cast<std::size_t>(k)] = power;
    }
    for (int it = 0; it < 500; ++it) {
        double shift = 0.0;
        for (int i = 0; i < deg; ++i) {
            std::complex<double> den = 1.0;
            for (int j = 0; j < deg; ++j)
                if (j != i)
                    den *= roots[static_cast<std::size_t>(i)] -
                           roots[static_cast<std::size_t>(j)];
            const std::complex<double> step =
                eval(roots[static_cast<std::size_t>(i)]) / den;
            roots[static_cast<std::size_t>(i)] -= step;
            shift = std::max(shift, std::abs(step));
        }
        if (shift < 1e-14) break;
    }
    return roots;
}

RegimeReport remainder_regime(const std::vector<double>& gammas, double d_s) {
    const std::size_t n = gammas.size();
    if (n < 2)
        throw invalid_input_error(
            "remainder_regime: at least two contraction ratios required");
    if (!(d_s > 0.0) || !std::isfinite(d_s))
        throw invalid_input_error("remainder_regime: d_s must be positive");
    for (double g : gammas)
        if (!(g > 0.0) || !(g < 1.0))
            throw invalid_input_error(
                "remainder_regime: contraction ratios must lie in (0,1)");

    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = -std::log(gammas[i]);

    // Common lattice: t_i / t_0 must all be rational with small denominators.
    long long den_lcm = 1;
    std::vector<std::pair<long long, long long>> frac(n);
    for (std::size_t i = 0; i < n; ++i) {
        frac[i] = rationalize(t[i] / t[0], 64, 1e-9);
        den_lcm = std::lcm(den_lcm, frac[i].second);
    }
    std::vector<long long> m(n);
    long long m_gcd = 0;
    for (std::size_t i = 0; i < n; ++i) {
        m[i] = frac[i].first * (den_lcm / frac[i].second);
        m_gcd = std::gcd(m_gcd, m[i]);
    }
    for (long long& v : m) v /= m_gcd;
    const double t_step =
        t[0] * static_cast<double>(m_gcd) / static_cast<double>(den_lcm);

    double moran = 0.0;
    for (double g : gammas) moran += std::pow(g, d_s);
    if (std::abs(moran - 1.0) > 1e-8)
        throw consistency_error(
            "remainder_regime: the ratios and exponent violate the measure "
            "identity sum gamma_i^d_s = 1");

    RegimeReport rep;
    rep.t_step = t_step;
    rep.m = m;
    rep.p = std::exp(d_s * t_step);

    // Weight-generating polynomial 1 - sum (z/p)^{m_i}; the measure identity
    // forces the root z = 1, which synthetic division strips exactly.
    const long long m_max = *std::max_element(m.begin(), m.end());
    std::vector<double> q(static_cast<std::size_t>(m_max) + 1, 0.0);
    q[0] = 1.0;
    for (long long mi : m)
        q[static_cast<std::size_t>(mi)] -= std::pow(rep.p, -static_cast<double>(mi));
    std::vector<double> reduced(static_cast<std::size_t>(m_max), 0.0);
    double acc = 0.0;
    for (long long k = 0; k < m_max; ++k) {
        acc += q[static_cast<std::size_t>(k)];
        reduced[static_cast<std::size_t>(k)] = acc;
    }

    const std::vector<std::complex<double>> roots = polynomial_roots(reduced);
    if (roots.empty()) {
        rep.beta = std::numeric_limits<double>::infinity();
        rep.multiplicity = 0;
        rep.regime = RemainderRegime::below;
        return rep;
    }
    double beta = std::abs(roots.front());
    for (const std::complex<double>& r : roots) beta = std::min(beta, std::abs(r));
    int mult = 0;
    for (const std::complex<double>& r : roots)
        if (std::abs(std::abs(r) - beta) <= 1e-6 * beta) ++mult;
    rep.beta = beta;
    rep.multiplicity = mult;
    if (rep.p < beta * (1.0 - 1e-9))
        rep.regime = RemainderRegime::below;
    else if (rep.p <= beta * (1.0 + 1e-9))
        rep.regime = RemainderRegime::critical;
    else
        rep.regime = RemainderRegime::above;
    return rep;
}

}  // namespace fractal_spectra

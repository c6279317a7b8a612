// Lattice renewal systems f(x) = A f(x - T) + z(x) on a uniform grid: the
// bounded solution vanishing on negative arguments, its rank-one periodic
// limit for irreducible unit-growth weights, and the polynomial growth
// degrees of block-triangular families.
#pragma once

#include <iosfwd>
#include <vector>

#include "asymptotics/profiles.hpp"

namespace fractal_spectra {

// Weights a (n x n, non-negative), lattice step t_step, sample spacing
// grid_step dividing t_step, and per-component source samples
// z[i][k] = z_i(k * grid_step), zero outside the sampled range.
struct RenewalSystem {
    std::vector<std::vector<double>> a;
    double t_step = 0.0;
    double grid_step = 0.0;
    std::vector<std::vector<double>> z;
};

// Shape, sign, finiteness and lattice-divisibility checks. Sources may take
// either sign; weights must be non-negative.
void validate_renewal(const RenewalSystem& sys);

struct RenewalSolution {
    double grid_step = 0.0;
    // f[i][k] = f_i(k * grid_step), k = 0 .. horizon_periods * (t_step/grid_step)
    std::vector<std::vector<double>> f;
    // max over the grid of |f(x) - A f(x-T) - z(x)| relative to max(1, sup|f|);
    // the sum and the recursion are independent routes, so this is a genuine
    // cross-check, not a tautology.
    double residual = 0.0;
};

// Evaluates f(x) = sum_{k>=0} A^k z(x - kT) on [0, horizon_periods * T].
// Throws divergence_error when the weight radius exceeds 1 + 1e-9 (the sum
// then grows geometrically and no bounded solution exists).
RenewalSolution renewal_solve(const RenewalSystem& sys, int horizon_periods);

// Periodic limit for irreducible weights of unit growth: componentwise
//   f_i(x + t_i T) - rho T * (B Z(x))_i -> 0,
//   B = u v^T / (T v^T u),   Z_j(x) = sum_{k in Z} z_j(x + t_j T + k rho T),
// where u, v are the right/left unit-growth eigenvectors, t_j the first
// passage time (lattice steps) from component j to component 0, and rho the
// lattice gcd of return times. The prefactor carries rho T, not rho alone:
// B is a density (it carries 1/T), and the lattice sum Z samples z at points
// rho T apart, so rho T * B Z is the Riemann sum of the density limit and is
// the only scaling that keeps both sides in the same units for every T.
struct RenewalLimit {
    std::vector<std::vector<double>> b;  // the rank-one matrix B
    std::vector<long long> t_access;     // t_j, first passage to component 0
    long long rho = 0;                   // lattice gcd of return times
    // sup deviation per rho*T window, indexed by window; the deviation is
    // evaluated wherever the shifted solution stays inside the horizon.
    std::vector<double> period_max;
    double deviation = 0.0;  // max of period_max over the last three windows
};

// Throws invalid_input_error when the weights are reducible (growth degrees
// then differ by component; use reducible_growth) or their radius is not 1
// within 1e-9 (radius r scales the solution like r^(x/T), so no fixed
// periodic limit exists), and when the sampled source fails to decay: once
// four or more lattice periods are sampled, the last period's sup must stay
// below half the largest period's sup, else the lattice sums Z_j need not
// converge and the limit statement is vacuous.
RenewalLimit renewal_limit(const RenewalSystem& sys, int horizon_periods);

// Growth of one component of a block-triangular family with unit overall
// growth: the solution grows like x^m times a lattice-periodic factor, where
// m + 1 is the largest number of unit-growth blocks threaded by a support
// path out of the component; components reaching no such block decay to 0.
struct GrowthReport {
    int domain = -1;
    bool reaches_basic = false;  // some unit-growth block is reachable
    int m_expected = -1;         // richest-path block count minus one
    long long rho_j = 0;         // lcm of reachable unit-growth block periods
    double m_fitted = 0.0;       // LS slope of log window-max vs log x
    PeriodicProfile profile;     // fold of f(x) / x^m over the tail windows
    bool tends_to_zero = false;
    bool inconclusive = false;   // horizon gave fewer than four fit windows
};

// Throws invalid_input_error when the weight radius is not 1 within 1e-6 or
// the domain index is out of range.
GrowthReport reducible_growth(const RenewalSystem& sys, int domain,
                              int horizon_periods);

// CSV with header "x,f_1,...,f_n", 17 significant digits.
void write_renewal_csv(const RenewalSolution& sol, std::ostream& out);

}  // namespace fractal_spectra

// Periodic-profile extraction from eigenvalue counting functions: the leading
// oscillation G in rho(x) ~ G(log x / 2) x^{d_S/2}, the second-order profile
// shared by a family of subdomains, and the two-sided counting bracket that
// ties a family's counting functions to one refinement step.
#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "bgd/analysis.hpp"
#include "spectra/spectrum.hpp"

namespace fractal_spectra {

// Fold of a sampled function of t over a fixed period: bins are anchored at
// absolute phase (bin 0 starts at t = 0 mod period), each (bin, period) pair
// is averaged first, the profile is the across-period mean of those averages
// and the spread their population standard deviation. Bins no period touches
// carry NaN means and zero counts.
struct PeriodicProfile {
    double period = 0.0;
    std::vector<double> means;   // per-bin across-period mean, NaN if uncovered
    std::vector<double> stds;    // per-bin across-period standard deviation
    std::vector<int> counts;     // periods contributing to the bin
    double min_value = 0.0;      // over covered bins
    double max_value = 0.0;
    double mean_value = 0.0;
    double fold_residual = 0.0;  // max over covered bins of stds

    int bins() const { return static_cast<int>(means.size()); }
    double amplitude() const { return max_value - min_value; }
    double bin_center(int b) const;
    // Step interpolation by bin; NaN on uncovered bins.
    double eval(double t) const;
};

void validate_profile(const PeriodicProfile& p);

// The fold engine. ts and ys are parallel samples; bins defaults to 64 per
// the sampling design (counting functions are steps; finer bins add nothing).
PeriodicProfile fold_profile(const std::vector<double>& ts,
                             const std::vector<double>& ys, double period,
                             int bins = 64);

// Leading profile G: samples rho(x) x^{-d_S/2} on a t-uniform grid
// (t = log x / 2) over [x_lo, x_hi] and folds by t_period. The window must
// span at least four periods so the across-period spread is meaningful.
// Throws invalid_input_error on an empty spectrum or a short window.
PeriodicProfile leading_profile(const Spectrum& spectrum, double d_s,
                                double t_period, double x_lo, double x_hi,
                                int grid_points = 12000, int bins = 64);

// Leading-term evaluator built from an extracted profile:
// x -> G(log x / 2) * x^{d_S/2}. A counting function of a reference spectrum
// at the matched level is the sharper alternative when one is available.
std::function<double(double)> profile_leading_term(const PeriodicProfile& g,
                                                   double d_s);

// One domain's data for the second-order extraction: its positive spectrum,
// the same-level leading-term reference evaluated at x, and the extraction
// window.
struct DomainCountingInput {
    const Spectrum* spectrum = nullptr;
    std::function<double(double)> leading;  // x -> c-free leading term value
    double x_lo = 0.0;
    double x_hi = 0.0;
};

struct SecondProfileReport {
    // Growth rate 1: the correction is O(1); only sup_phi is populated.
    bool bounded_mode = false;
    double sup_phi = 0.0;

    // Growth rate above 1: per-domain profiles of
    // (rho_i(x) - c_i * leading(x)) x^{-d/2} / b_i, shifted by the access
    // time to the first domain and folded by the lattice period.
    std::vector<PeriodicProfile> domains;
    std::vector<double> shifts;        // t_{i1} * t_period subtracted from t
    double fold_period = 0.0;          // lattice_gcd * t_period
    PeriodicProfile consensus;         // bin-wise mean across domains
    double max_pairwise_gap = 0.0;     // over bins covered by both domains
};

// Second-order profile shared across the family. Requires one input per
// domain of the analysis. With growth rate psi = 1 the report switches to
// bounded mode (the correction term is O(1)); with psi > 1 the analysis must
// be irreducible, otherwise the per-domain growth degrees differ and a single
// profile does not exist (invalid_input_error points to the growth report).
SecondProfileReport second_profile(const std::vector<DomainCountingInput>& inputs,
                                   const IncidenceAnalysis& analysis, double d_s,
                                   double d, double t_period,
                                   int grid_points = 12000, int bins = 64);

// Two-sided refinement bracket: at matched discrete levels the defect
//   rho_i^{(n)}(x) - sum_j a_ij rho_j^{(n-1)}(gamma^2 x) - s_i rho_*^{(n-1)}(gamma^2 x)
// stays within a constant bound M (alphabet size times boundary slots, plus
// measured discretization slack).
struct BracketingReport {
    double bound = 0.0;     // M
    double max_abs = 0.0;   // max over grid and domains of |defect|
    double excess = 0.0;    // max_abs - M (negative when the bracket holds)
    int argmax_domain = -1;
    double argmax_x = 0.0;
    std::vector<double> per_domain_max;
    std::vector<double> grid;                 // the x grid
    std::vector<std::vector<double>> defect;  // per domain, per grid point
};

// upper[i] must be one level above lower[i]; the base spectrum pairs with the
// lower level. gamma in (0, 1]; the grid is log-uniform on [x_lo, x_hi].
BracketingReport verify_bracketing(const std::vector<Spectrum>& upper,
                                   const std::vector<Spectrum>& lower,
                                   const IncidenceMatrix& a,
                                   const std::vector<long long>& inside_counts,
                                   const Spectrum& base_lower, double gamma,
                                   double bound, double x_lo, double x_hi,
                                   int grid_points = 2000);

// CSV with header "bin_center_t,mean,std,n_samples", 17 significant digits.
void write_profile_csv(const PeriodicProfile& p, std::ostream& out);

}  // namespace fractal_spectra

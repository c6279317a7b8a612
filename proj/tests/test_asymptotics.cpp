// Asymptotic analysis of eigenvalue counting: periodic-profile folds, the
// second-order profiles shared by families of subdomains, two-sided
// refinement brackets, lattice remainder-regime classification, and lattice
// renewal systems (bounded superposition solve, rank-one periodic limits,
// polynomial growth degrees of block-triangular families).
//
// Oracles: hand-built periodic samples with exact fold statistics; a
// synthetic power-law spectrum whose counting function has a closed form,
// compared bin by bin against the spectrum route; counting monotonicity
// under domain inclusion; exact eigensystem data for 1x1/2x2 weight
// matrices; staircase/binomial renewal solutions known in closed form; a
// from-scratch recursion as an independent second route to the
// superposition sum; and factored polynomials for the root finder.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "asymptotics/profiles.hpp"
#include "asymptotics/regime.hpp"
#include "asymptotics/renewal.hpp"
#include "bgd/analysis.hpp"
#include "bgd/realize.hpp"
#include "bgd/systems.hpp"
#include "core/errors.hpp"
#include "core/fractal.hpp"
#include "forms/assemble.hpp"
#include "forms/harmonic.hpp"
#include "spectra/decimation.hpp"
#include "spectra/spectrum.hpp"

using namespace fractal_spectra;

namespace {

const double kT = std::log(5.0) / 2.0;  // log-eigenvalue lattice step of the gasket
const double kDs = 2.0 * std::log(3.0) / std::log(5.0);        // leading exponent
const double kDBoundary = 2.0 * std::log(2.0) / std::log(5.0);  // second-term exponent
const double kGammaSg = 1.0 / std::sqrt(5.0);

const Spectrum& gasket_spectrum(int level) {
    static std::map<int, Spectrum> cache;
    auto it = cache.find(level);
    if (it == cache.end())
        it = cache.emplace(level, decimate_sg(level, BoundaryCondition::dirichlet))
                 .first;
    return it->second;
}

Spectrum realize_and_solve(const std::string& preset, int domain, int level,
                           const std::string& tag) {
    const BgdSystem sys = bgd_preset(preset);
    const Fractal f = sg_geometry();
    const VertexSet vs = build_vertex_set(f, level);
    const DomainRealization real = realize_domain(sys, f, vs, domain);
    const LevelForm form = assemble_cells(sg_harmonic(), sg_measure(), vs,
                                          real.realized_masks, real.dirichlet_ids);
    return solve_dense(form, BoundaryCondition::dirichlet, tag);
}

// Gasket with its bottom row pinned.
const Spectrum& bottom_cut_spectrum(int level) {
    static std::map<int, Spectrum> cache;
    auto it = cache.find(level);
    if (it == cache.end())
        it = cache.emplace(level, realize_and_solve("sg-cut-bottom", 0, level, "cut"))
                 .first;
    return it->second;
}

// Open horizontal-cut domains; the cut-line vertices drop out, nothing is
// pinned, and the zero modes stay out of the counting.
const Spectrum& cut_height_spectrum(int domain, int level) {
    static std::map<std::pair<int, int>, Spectrum> cache;
    const std::pair<int, int> key{domain, level};
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, realize_and_solve("sg-thirds", domain, level, "cut-height"))
                 .first;
    return it->second;
}

std::function<double(double)> counting_of(const Spectrum& s) {
    CountingFunction cf(s);
    return [cf](double x) { return cf(x); };
}

bool all_bins_covered(const PeriodicProfile& p) {
    for (int c : p.counts)
        if (c == 0) return false;
    return true;
}

// Eigenvalues 5^k with multiplicity 3^k: the counting function is the exact
// geometric sum (3^(j+1)-1)/2 at j = floor(log x / log 5).
Spectrum power_spectrum() {
    Spectrum s;
    double value = 1.0;
    long long mult = 1;
    for (int k = 0; k <= 19; ++k) {
        s.values.push_back(value);
        s.multiplicities.push_back(static_cast<int>(mult));
        value *= 5.0;
        mult *= 3;
    }
    s.level = 19;
    s.domain_tag = "power-law";
    return s;
}

std::vector<double> unit_bump(int samples) {
    return std::vector<double>(static_cast<std::size_t>(samples), 1.0);
}

std::vector<double> decaying_samples(int samples, double rate, double first) {
    std::vector<double> z(static_cast<std::size_t>(samples));
    double v = first;
    for (int k = 0; k < samples; ++k) {
        z[static_cast<std::size_t>(k)] = v;
        v *= rate;
    }
    return z;
}

}  // namespace

// ---------------------------------------------------------------------------
// Fold engine
// ---------------------------------------------------------------------------

TEST_CASE("fold reproduces an exactly periodic step with zero spread") {
    std::vector<double> ts, ys;
    for (int p = 0; p < 2; ++p)
        for (int b = 0; b < 4; ++b) {
            ts.push_back(p + 0.25 * b);
            ys.push_back(1.0 + b);
        }
    const PeriodicProfile prof = fold_profile(ts, ys, 1.0, 4);
    REQUIRE(prof.bins() == 4);
    for (int b = 0; b < 4; ++b) {
        CHECK(prof.means[static_cast<std::size_t>(b)] == 1.0 + b);
        CHECK(prof.stds[static_cast<std::size_t>(b)] == 0.0);
        CHECK(prof.counts[static_cast<std::size_t>(b)] == 2);
    }
    CHECK(prof.fold_residual == 0.0);
    CHECK(prof.min_value == 1.0);
    CHECK(prof.max_value == 4.0);
    CHECK(prof.mean_value == 2.5);
    CHECK(prof.amplitude() == 3.0);
    CHECK(prof.bin_center(0) == doctest::Approx(0.125));
    CHECK(prof.bin_center(3) == doctest::Approx(0.875));
    validate_profile(prof);
}

TEST_CASE("fold averages within each period before averaging across periods") {
    // Bin 0 sees two samples in period 0 (mean 1) and one in period 1 (3):
    // the profile mean must be (1+3)/2 = 2, not the sample mean 5/3.
    const std::vector<double> ts{0.05, 0.10, 1.05, 0.60};
    const std::vector<double> ys{0.0, 2.0, 3.0, 5.0};
    const PeriodicProfile prof = fold_profile(ts, ys, 1.0, 2);
    REQUIRE(prof.bins() == 2);
    CHECK(prof.means[0] == doctest::Approx(2.0));
    CHECK(prof.stds[0] == doctest::Approx(1.0));  // population std of {1, 3}
    CHECK(prof.counts[0] == 2);
    CHECK(prof.means[1] == doctest::Approx(5.0));
    CHECK(prof.stds[1] == 0.0);
    CHECK(prof.counts[1] == 1);
    CHECK(prof.fold_residual == doctest::Approx(1.0));
    CHECK(prof.mean_value == doctest::Approx(3.5));
}

TEST_CASE("fold marks uncovered bins and anchors phase at zero") {
    // Samples cover only the first half-period; negative times wrap:
    // -0.75 has phase 0.25 and period index -1.
    const std::vector<double> ts{0.1, 0.3, 1.2, -0.75};
    const std::vector<double> ys{1.0, 2.0, 3.0, 8.0};
    const PeriodicProfile prof = fold_profile(ts, ys, 1.0, 4);
    REQUIRE(prof.bins() == 4);
    CHECK(prof.counts[0] == 2);  // phases 0.1 and 0.2
    CHECK(prof.means[0] == doctest::Approx(2.0));
    CHECK(prof.counts[1] == 2);  // phases 0.3 and 0.25
    CHECK(prof.means[1] == doctest::Approx(5.0));
    CHECK(prof.stds[1] == doctest::Approx(3.0));
    CHECK(prof.counts[2] == 0);
    CHECK(std::isnan(prof.means[2]));
    CHECK(prof.counts[3] == 0);
    CHECK(std::isnan(prof.means[3]));
    // Stats run over covered bins only.
    CHECK(prof.min_value == doctest::Approx(2.0));
    CHECK(prof.max_value == doctest::Approx(5.0));
    CHECK(std::isfinite(prof.mean_value));
    validate_profile(prof);

    // eval wraps negative arguments onto the stored bins.
    CHECK(prof.eval(-0.9) == doctest::Approx(prof.eval(0.1)));
}

TEST_CASE("fold and profile validation reject malformed inputs") {
    const std::vector<double> ts{0.1, 0.2};
    const std::vector<double> ys{1.0, 2.0};
    CHECK_THROWS_AS(fold_profile({}, {}, 1.0, 4), invalid_input_error);
    CHECK_THROWS_AS(fold_profile(ts, {1.0}, 1.0, 4), invalid_input_error);
    CHECK_THROWS_AS(fold_profile(ts, ys, 0.0, 4), invalid_input_error);
    CHECK_THROWS_AS(fold_profile(ts, ys, -1.0, 4), invalid_input_error);
    CHECK_THROWS_AS(fold_profile(ts, ys, 1.0, 0), invalid_input_error);

    PeriodicProfile bad = fold_profile(ts, ys, 1.0, 2);
    bad.period = -1.0;
    CHECK_THROWS_AS(validate_profile(bad), invalid_input_error);
    bad = fold_profile(ts, ys, 1.0, 2);
    bad.stds.pop_back();
    CHECK_THROWS_AS(validate_profile(bad), invalid_input_error);
    bad = fold_profile(ts, ys, 1.0, 2);
    bad.means[0] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(validate_profile(bad), invalid_input_error);
    bad = fold_profile(ts, ys, 1.0, 2);
    bad.fold_residual = -1e-3;
    CHECK_THROWS_AS(validate_profile(bad), invalid_input_error);
}

TEST_CASE("profile evaluation steps by bin and scales into a leading term") {
    std::vector<double> ts, ys;
    for (int p = 0; p < 3; ++p)
        for (int b = 0; b < 8; ++b) {
            ts.push_back(2.0 * p + 0.25 * b + 0.01);
            ys.push_back(b < 4 ? 1.0 : 3.0);
        }
    const PeriodicProfile prof = fold_profile(ts, ys, 2.0, 8);
    CHECK(prof.eval(0.3) == doctest::Approx(1.0));
    CHECK(prof.eval(1.7) == doctest::Approx(3.0));
    CHECK(prof.eval(4.3) == doctest::Approx(1.0));  // periodic continuation

    const std::function<double(double)> lead = profile_leading_term(prof, 1.0);
    // x -> G(log x / 2) * x^{1/2} with G the step profile above.
    const double x_low_phase = std::exp(2.0 * 0.3);
    CHECK(lead(x_low_phase) == doctest::Approx(std::sqrt(x_low_phase)));
    const double x_high_phase = std::exp(2.0 * 1.7);
    CHECK(lead(x_high_phase) == doctest::Approx(3.0 * std::sqrt(x_high_phase)));
}

// ---------------------------------------------------------------------------
// Leading profile
// ---------------------------------------------------------------------------

TEST_CASE("counting route and closed-form route agree on a power spectrum") {
    const Spectrum toy = power_spectrum();
    // A grid whose step divides the period samples the same phases in every
    // period row, so the across-period spread isolates the geometric decay
    // of the counting remainder. The tiny offset keeps every sample clear of
    // the lattice boundaries, and the last sample stops short of opening a
    // sixth, partially covered period row.
    const double q = 2400.0;
    const double t_lo = 14.0 * kT + kT / (4.0 * q);
    const double t_hi = t_lo + 11999.0 * kT / q;
    const double x_lo = std::exp(2.0 * t_lo);
    const double x_hi = std::exp(2.0 * t_hi);
    const PeriodicProfile via_spectrum =
        leading_profile(toy, kDs, kT, x_lo, x_hi, 12000, 64);

    std::vector<double> ts(12000), ys(12000);
    const double step = (t_hi - t_lo) / 11999.0;
    for (int k = 0; k < 12000; ++k) {
        const double t = t_lo + step * k;
        const double j = std::floor(t / kT);
        ts[static_cast<std::size_t>(k)] = t;
        ys[static_cast<std::size_t>(k)] =
            0.5 * (std::pow(3.0, j + 1.0) - 1.0) * std::exp(-kDs * t);
    }
    const PeriodicProfile direct = fold_profile(ts, ys, kT, 64);

    REQUIRE(via_spectrum.bins() == 64);
    REQUIRE(all_bins_covered(via_spectrum));
    for (int b = 0; b < 64; ++b) {
        CHECK(via_spectrum.counts[static_cast<std::size_t>(b)] ==
              direct.counts[static_cast<std::size_t>(b)]);
        CHECK(via_spectrum.means[static_cast<std::size_t>(b)] ==
              doctest::Approx(direct.means[static_cast<std::size_t>(b)])
                  .epsilon(1e-9));
        CHECK(via_spectrum.counts[static_cast<std::size_t>(b)] >= 5);
    }
    // Within a lattice period the rescaled counting is a function of the
    // phase alone up to the geometrically vanishing -1/2 term.
    CHECK(via_spectrum.fold_residual <= 1e-6);
    CHECK(via_spectrum.min_value > 0.49);
    CHECK(via_spectrum.max_value < 1.5 + 1e-9);
    CHECK(via_spectrum.amplitude() > 0.9);
}

TEST_CASE("leading profile rejects unusable windows") {
    const Spectrum toy = power_spectrum();
    Spectrum empty;
    CHECK_THROWS_AS(leading_profile(empty, kDs, kT, 1e3, 1e9), invalid_input_error);
    // Fewer than four periods.
    CHECK_THROWS_AS(
        leading_profile(toy, kDs, kT, 1e3, 1e3 * std::exp(2.0 * 3.9 * kT)),
        invalid_input_error);
    CHECK_THROWS_AS(leading_profile(toy, kDs, kT, -1.0, 1e9), invalid_input_error);
    CHECK_THROWS_AS(leading_profile(toy, kDs, kT, 1e9, 1e3), invalid_input_error);
    CHECK_THROWS_AS(leading_profile(toy, 0.0, kT, 1e3, 1e9), invalid_input_error);
    CHECK_THROWS_AS(leading_profile(toy, kDs, 0.0, 1e3, 1e9), invalid_input_error);
    // Grid too coarse for the bin count.
    CHECK_THROWS_AS(leading_profile(toy, kDs, kT, 1e3, 1e9, 100, 64),
                    invalid_input_error);
}

TEST_CASE("decimated level-10 profile is stable across periods in its clean band") {
    const Spectrum s10 = gasket_spectrum(10);
    const double x_hi = s10.max_value() / 100.0;
    const PeriodicProfile g = leading_profile(s10, kDs, kT, 1e3, x_hi, 30000, 64);
    REQUIRE(all_bins_covered(g));
    for (int b = 0; b < g.bins(); ++b)
        CHECK(g.counts[static_cast<std::size_t>(b)] >= 3);
    CHECK(g.min_value > 0.0);
    CHECK(g.mean_value > 0.0);
    // Across-period wobble stays well under the profile scale in the band
    // away from both spectral ends.
    CHECK(g.fold_residual / g.mean_value < 0.05);
}

// ---------------------------------------------------------------------------
// Second-order profiles
// ---------------------------------------------------------------------------

TEST_CASE("second profile of the bottom-cut family is nonpositive with unit shift") {
    const BgdSystem sys = bgd_preset("sg-cut-bottom");
    const IncidenceAnalysis an = analyze(sys, kGammaSg);
    REQUIRE(an.d == doctest::Approx(kDBoundary));  // doubling family
    const Spectrum& cut4 = bottom_cut_spectrum(4);
    const Spectrum& k4 = gasket_spectrum(4);
    const double x_hi = cut4.max_value();
    const std::vector<DomainCountingInput> inputs{
        {&cut4, counting_of(k4), x_hi / 1e3, x_hi}};
    const SecondProfileReport rep = second_profile(inputs, an, kDs, an.d, kT);
    REQUIRE_FALSE(rep.bounded_mode);
    REQUIRE(rep.domains.size() == 1);
    CHECK(rep.fold_period == doctest::Approx(kT));
    CHECK(rep.shifts[0] == doctest::Approx(kT));
    CHECK(rep.max_pairwise_gap == 0.0);
    REQUIRE(all_bins_covered(rep.domains[0]));
    // Pinning the bottom row can only remove eigenvalues, so the rescaled
    // correction is nonpositive everywhere and visibly so.
    CHECK(rep.domains[0].max_value <= 0.0);
    CHECK(rep.domains[0].min_value < -0.01);
    // Single-domain consensus is the domain profile itself.
    for (int b = 0; b < rep.consensus.bins(); ++b)
        CHECK(rep.consensus.means[static_cast<std::size_t>(b)] ==
              rep.domains[0].means[static_cast<std::size_t>(b)]);
}

TEST_CASE("second profiles of the two cut heights agree after rescaling") {
    const BgdSystem sys = bgd_preset("sg-thirds");
    const IncidenceAnalysis an = analyze(sys, kGammaSg);
    REQUIRE(an.irreducible);
    REQUIRE(an.lattice_gcd == 2);
    // Alternating family: the boundary grows by sqrt(2) per level step.
    REQUIRE(an.d == doctest::Approx(std::log(2.0) / std::log(5.0)));

    const Spectrum& low_cut = cut_height_spectrum(0, 5);   // cut at 1/3 height
    const Spectrum& high_cut = cut_height_spectrum(1, 6);  // cut at 2/3 height
    const Spectrum& k5 = gasket_spectrum(5);
    const Spectrum& k6 = gasket_spectrum(6);
    const double hi0 = low_cut.max_value();
    const double hi1 = high_cut.max_value();
    const std::vector<DomainCountingInput> inputs{
        {&low_cut, counting_of(k5), hi0 / 1e3, hi0},
        {&high_cut, counting_of(k6), hi1 / 1e3, hi1}};
    const SecondProfileReport rep = second_profile(inputs, an, kDs, an.d, kT);

    REQUIRE_FALSE(rep.bounded_mode);
    REQUIRE(rep.domains.size() == 2);
    CHECK(rep.fold_period == doctest::Approx(2.0 * kT));
    CHECK(rep.shifts[0] == doctest::Approx(2.0 * kT));
    CHECK(rep.shifts[1] == doctest::Approx(kT));
    REQUIRE(all_bins_covered(rep.domains[0]));
    REQUIRE(all_bins_covered(rep.domains[1]));
    for (int b = 0; b < rep.consensus.bins(); ++b)
        CHECK(rep.consensus.counts[static_cast<std::size_t>(b)] == 2);

    // The two domains sample disjoint spectra at different levels and carry
    // an honestly large across-period spread at these depths (the bounded
    // one-step substitution defect relaxes slowly); after the prescribed
    // rescaling and access-time shift they still trace one profile well
    // within that spread.
    const double spread =
        std::max(rep.domains[0].fold_residual, rep.domains[1].fold_residual);
    CHECK(rep.max_pairwise_gap <= 3.0 * spread);
    CHECK(rep.max_pairwise_gap < 0.25);  // measured 0.104
    CHECK(spread > 0.1);                 // measured 0.397
    CHECK(spread < 0.8);
    // Order-one profiles: the rescaling neither blows up nor collapses.
    CHECK(rep.consensus.amplitude() > 0.05);
    CHECK(std::abs(rep.consensus.max_value) < 2.0);
    CHECK(std::abs(rep.consensus.min_value) < 2.0);
}

TEST_CASE("unit growth switches the second profile to bounded mode") {
    const BgdSystem sys = bgd_preset("sg-halves");
    const IncidenceAnalysis an = analyze(sys, kGammaSg);
    REQUIRE(an.psi == doctest::Approx(1.0));
    REQUIRE_FALSE(an.irreducible);

    const Spectrum left = realize_and_solve("sg-halves", 0, 3, "half-left");
    const Spectrum punctured = realize_and_solve("sg-halves", 1, 3, "punctured");
    const Spectrum& k3 = gasket_spectrum(3);
    const double hi0 = left.max_value();
    const double hi1 = punctured.max_value();
    const std::vector<DomainCountingInput> inputs{
        {&left, counting_of(k3), hi0 / 100.0, hi0},
        {&punctured, counting_of(k3), hi1 / 100.0, hi1}};
    const SecondProfileReport rep =
        second_profile(inputs, an, kDs, kDBoundary, kT);
    CHECK(rep.bounded_mode);
    CHECK(rep.domains.empty());
    CHECK(std::isfinite(rep.sup_phi));
    CHECK(rep.sup_phi > 0.0);
    // Reflection halves and the punctured gasket track their shares of the
    // full counting within a fixed number of eigenvalues on these windows.
    CHECK(rep.sup_phi <= 12.0);
}

TEST_CASE("second profile refuses mismatched inputs and reducible growth") {
    const IncidenceAnalysis an = analyze(bgd_preset("sg-thirds"), kGammaSg);
    Spectrum tiny;
    tiny.values = {1.0};
    tiny.multiplicities = {1};
    const std::function<double(double)> zero = [](double) { return 0.0; };

    // One input per domain.
    CHECK_THROWS_AS(
        second_profile({{&tiny, zero, 1.0, 1e6}}, an, kDs, kDBoundary, kT),
        invalid_input_error);
    // Missing spectrum or reference.
    CHECK_THROWS_AS(second_profile({{nullptr, zero, 1.0, 1e6},
                                    {&tiny, zero, 1.0, 1e6}},
                                   an, kDs, kDBoundary, kT),
                    invalid_input_error);
    CHECK_THROWS_AS(second_profile({{&tiny, nullptr, 1.0, 1e6},
                                    {&tiny, zero, 1.0, 1e6}},
                                   an, kDs, kDBoundary, kT),
                    invalid_input_error);
    // Window shorter than the fold period.
    CHECK_THROWS_AS(second_profile({{&tiny, zero, 1.0, 2.0},
                                    {&tiny, zero, 1.0, 2.0}},
                                   an, kDs, kDBoundary, kT),
                    invalid_input_error);

    // A reducible family with growth above 1 has no shared profile.
    const IncidenceAnalysis comb = analyze(bgd_preset("sg-tilde"), kGammaSg);
    REQUIRE(comb.psi == doctest::Approx(2.0));
    REQUIRE_FALSE(comb.irreducible);
    const std::vector<DomainCountingInput> five(
        static_cast<std::size_t>(comb.domain_count),
        DomainCountingInput{&tiny, zero, 1.0, 1e6});
    CHECK_THROWS_AS(second_profile(five, comb, kDs, kDBoundary, kT),
                    invalid_input_error);
}

// ---------------------------------------------------------------------------
// Refinement bracketing
// ---------------------------------------------------------------------------

TEST_CASE("bracket defect vanishes on the scalar staircase identity") {
    Spectrum hi, lo;
    for (int k = 1; k <= 800; ++k) {
        hi.values.push_back(static_cast<double>(k));
        hi.multiplicities.push_back(1);
        lo.values.push_back(static_cast<double>(k));
        lo.multiplicities.push_back(1);
    }
    hi.level = 1;
    lo.level = 0;
    const BracketingReport rep = verify_bracketing(
        {hi}, {lo}, {{1}}, {0}, lo, 1.0, 0.5, 1.0, 400.0, 500);
    CHECK(rep.max_abs == 0.0);
    CHECK(rep.excess == doctest::Approx(-0.5));
    REQUIRE(rep.grid.size() == 500);
    REQUIRE(rep.defect.size() == 1);
    for (double d : rep.defect[0]) CHECK(d == 0.0);
}

TEST_CASE("refinement bracket holds for the bottom-cut family and flags corruption") {
    const IncidenceMatrix a{{2}};
    const std::vector<long long> inside{1};
    for (int upper_level : {4, 5}) {
        const Spectrum& up = bottom_cut_spectrum(upper_level);
        const Spectrum& low = bottom_cut_spectrum(upper_level - 1);
        const Spectrum& base = gasket_spectrum(upper_level - 1);
        const double xmax = up.max_value();
        const BracketingReport rep =
            verify_bracketing({up}, {low}, a, inside, base, kGammaSg, 12.0,
                              xmax / 1e4, xmax / 10.0);
        CHECK(rep.max_abs <= 12.0);
        CHECK(rep.excess <= 0.0);
        CHECK(rep.max_abs > 0.5);  // the defect is genuinely nonzero
        CHECK(rep.argmax_domain == 0);
        CHECK(rep.per_domain_max[0] == rep.max_abs);
    }

    // Overstating the substitution count breaks the bracket, and the damage
    // grows with x (one full lower-level counting function is left over).
    const Spectrum& up = bottom_cut_spectrum(5);
    const Spectrum& low = bottom_cut_spectrum(4);
    const Spectrum& base = gasket_spectrum(4);
    const double xmax = up.max_value();
    const BracketingReport bad = verify_bracketing(
        {up}, {low}, {{3}}, inside, base, kGammaSg, 12.0, xmax / 100.0, xmax,
        2000);
    CHECK(bad.excess > 0.0);
    double low_half = 0.0, high_half = 0.0;
    for (int k = 0; k < 1000; ++k)
        low_half = std::max(low_half, std::abs(bad.defect[0][static_cast<std::size_t>(k)]));
    for (int k = 1000; k < 2000; ++k)
        high_half = std::max(high_half, std::abs(bad.defect[0][static_cast<std::size_t>(k)]));
    CHECK(high_half > 2.0 * low_half);
}

TEST_CASE("bracket validation pins levels, shapes and the scale factor") {
    const Spectrum& up = bottom_cut_spectrum(4);
    const Spectrum& low = bottom_cut_spectrum(3);
    const Spectrum& base = gasket_spectrum(3);
    const IncidenceMatrix a{{2}};
    // Same level on both sides.
    CHECK_THROWS_AS(verify_bracketing({up}, {up}, a, {1}, base, kGammaSg, 12.0,
                                      10.0, 1e3),
                    invalid_input_error);
    // Base level must match the lower level.
    CHECK_THROWS_AS(verify_bracketing({up}, {low}, a, {1}, up, kGammaSg, 12.0,
                                      10.0, 1e3),
                    invalid_input_error);
    // Family sizes must agree with the matrix.
    CHECK_THROWS_AS(verify_bracketing({up, up}, {low, low}, a, {1, 1}, base,
                                      kGammaSg, 12.0, 10.0, 1e3),
                    invalid_input_error);
    CHECK_THROWS_AS(verify_bracketing({up}, {low}, a, {1, 2}, base, kGammaSg,
                                      12.0, 10.0, 1e3),
                    invalid_input_error);
    // Scale factor within (0, 1]; sane window.
    CHECK_THROWS_AS(verify_bracketing({up}, {low}, a, {1}, base, 0.0, 12.0,
                                      10.0, 1e3),
                    invalid_input_error);
    CHECK_THROWS_AS(verify_bracketing({up}, {low}, a, {1}, base, 1.5, 12.0,
                                      10.0, 1e3),
                    invalid_input_error);
    CHECK_THROWS_AS(verify_bracketing({up}, {low}, a, {1}, base, kGammaSg, 12.0,
                                      1e3, 10.0),
                    invalid_input_error);
}

TEST_CASE("one-level counting recursion of the cut-gasket correction stays bounded") {
    // phi(x) = rho_cut(x) - rho_full(x) at matched levels doubles under
    // x -> x/5 up to a fixed number of eigenvalues, across three decades.
    const auto recursion_sup = [](int level) {
        const CountingFunction cut_n(bottom_cut_spectrum(level));
        const CountingFunction full_n(gasket_spectrum(level));
        const CountingFunction cut_p(bottom_cut_spectrum(level - 1));
        const CountingFunction full_p(gasket_spectrum(level - 1));
        const double xmax = bottom_cut_spectrum(level).max_value();
        const double lo = std::log(xmax / 1e4);
        const double hi = std::log(xmax / 10.0);
        double worst = 0.0;
        for (int k = 0; k < 3000; ++k) {
            const double x = std::exp(lo + (hi - lo) * k / 2999.0);
            const double phi_n = cut_n(x) - full_n(x);
            const double phi_p = cut_p(x / 5.0) - full_p(x / 5.0);
            worst = std::max(worst, std::abs(phi_n - 2.0 * phi_p));
        }
        return worst;
    };
    CHECK(recursion_sup(5) <= 12.0);
    CHECK(recursion_sup(6) <= 12.0);
}

// ---------------------------------------------------------------------------
// Remainder regime
// ---------------------------------------------------------------------------

TEST_CASE("golden two-scale spectrum decays below its oscillation order") {
    const double phi = 0.5 * (1.0 + std::sqrt(5.0));
    const double d_s = std::log(phi) / std::log(2.0);
    const RegimeReport rep = remainder_regime({0.25, 0.5}, d_s);
    CHECK(rep.t_step == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(rep.m == std::vector<long long>{2, 1});
    CHECK(rep.p == doctest::Approx(phi).epsilon(1e-12));
    // Q(z) = 1 - (z/p) - (z/p)^2 loses its forced root at 1; the survivor is
    // -phi^2.
    CHECK(rep.beta == doctest::Approx(phi * phi).epsilon(1e-10));
    CHECK(rep.multiplicity == 1);
    CHECK(rep.regime == RemainderRegime::below);
}

TEST_CASE("uniform contractions leave no subleading root") {
    const RegimeReport rep =
        remainder_regime({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 1.0);
    CHECK(rep.m == std::vector<long long>{1, 1, 1});
    CHECK(rep.t_step == doctest::Approx(std::log(3.0)));
    CHECK(rep.p == doctest::Approx(3.0));
    CHECK(std::isinf(rep.beta));
    CHECK(rep.multiplicity == 0);
    CHECK(rep.regime == RemainderRegime::below);
}

TEST_CASE("lattice weights on the critical circle are classified as critical") {
    // gammas (1/2, 1/4, 1/4) at d_s = 1: 1 - z/2 - z^2/2 factors as
    // -(z - 1)(z + 2)/2, so the surviving root sits at -2 while the growth
    // per lattice step is 2 as well.
    const RegimeReport rep = remainder_regime({0.5, 0.25, 0.25}, 1.0);
    CHECK(rep.m == std::vector<long long>{1, 2, 2});
    CHECK(rep.p == doctest::Approx(2.0));
    CHECK(rep.beta == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(rep.multiplicity == 1);
    CHECK(rep.regime == RemainderRegime::critical);
}

TEST_CASE("a heavy short scale pushes the oscillation above the remainder") {
    // m = (1, 3, 3): the weight w = 1/p solves 2w^3 + w = 1, and the two
    // surviving roots are the conjugate pair of 1 + (1-w)z + (1-w)z^2 with
    // modulus 1/sqrt(1-w) < p.
    double w = 0.6;
    for (int it = 0; it < 60; ++it)
        w -= (2.0 * w * w * w + w - 1.0) / (6.0 * w * w + 1.0);
    const double p = 1.0 / w;
    const RegimeReport rep =
        remainder_regime({w, w * w * w, w * w * w}, 1.0);
    CHECK(rep.m == std::vector<long long>{1, 3, 3});
    CHECK(rep.p == doctest::Approx(p).epsilon(1e-10));
    CHECK(rep.beta == doctest::Approx(1.0 / std::sqrt(1.0 - w)).epsilon(1e-9));
    CHECK(rep.multiplicity == 2);
    CHECK(rep.beta < rep.p);
    CHECK(rep.regime == RemainderRegime::above);
}

TEST_CASE("regime detection rejects degenerate and incommensurable inputs") {
    CHECK_THROWS_AS(remainder_regime({0.5}, 1.0), invalid_input_error);
    CHECK_THROWS_AS(remainder_regime({0.5, 1.5}, 1.0), invalid_input_error);
    CHECK_THROWS_AS(remainder_regime({0.5, 0.0}, 1.0), invalid_input_error);
    CHECK_THROWS_AS(remainder_regime({0.5, 0.5}, -1.0), invalid_input_error);
    // Irrational log-ratio: no lattice.
    CHECK_THROWS_AS(
        remainder_regime({0.5, std::pow(0.5, std::sqrt(2.0))}, 1.0),
        invalid_input_error);
    // Exponent violating the measure identity.
    CHECK_THROWS_AS(remainder_regime({0.25, 0.5}, 1.0), consistency_error);
}

TEST_CASE("polynomial roots match factored forms") {
    const auto sorted_real = [](std::vector<std::complex<double>> roots) {
        std::vector<double> re;
        for (const std::complex<double>& r : roots) {
            CHECK(std::abs(r.imag()) < 1e-9);
            re.push_back(r.real());
        }
        std::sort(re.begin(), re.end());
        return re;
    };

    const std::vector<double> quad = sorted_real(polynomial_roots({-1.0, 0.0, 1.0}));
    REQUIRE(quad.size() == 2);
    CHECK(quad[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(quad[1] == doctest::Approx(1.0).epsilon(1e-12));

    // -(z-1)(z-2)(z-3) = 6 - 11 z + 6 z^2 - z^3.
    const std::vector<double> cubic =
        sorted_real(polynomial_roots({6.0, -11.0, 6.0, -1.0}));
    REQUIRE(cubic.size() == 3);
    CHECK(cubic[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(cubic[1] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(cubic[2] == doctest::Approx(3.0).epsilon(1e-9));

    const std::vector<double> lin = sorted_real(polynomial_roots({1.0, 1.0}));
    REQUIRE(lin.size() == 1);
    CHECK(lin[0] == doctest::Approx(-1.0));

    CHECK(polynomial_roots({5.0}).empty());
    CHECK(polynomial_roots({5.0, 0.0, 0.0}).empty());  // trailing zeros trim
    CHECK_THROWS_AS(polynomial_roots({}), invalid_input_error);
    CHECK_THROWS_AS(polynomial_roots({0.0, 0.0}), invalid_input_error);
}

// ---------------------------------------------------------------------------
// Renewal solve
// ---------------------------------------------------------------------------

TEST_CASE("renewal solve reproduces staircase and binomial closed forms") {
    RenewalSystem stairs;
    stairs.a = {{1.0, 1.0}, {0.0, 1.0}};
    stairs.t_step = 1.0;
    stairs.grid_step = 0.125;
    stairs.z = {unit_bump(8), unit_bump(8)};
    const RenewalSolution sol = renewal_solve(stairs, 40);
    REQUIRE(sol.f.size() == 2);
    REQUIRE(sol.f[0].size() == 321);
    for (int g = 0; g < 321; ++g) {
        const double q = static_cast<double>(g / 8);
        CHECK(sol.f[0][static_cast<std::size_t>(g)] == 1.0 + q);
        CHECK(sol.f[1][static_cast<std::size_t>(g)] == 1.0);
    }
    CHECK(sol.residual <= 1e-15);

    // Adding a third tier turns the top component into the binomial sum
    // 1 + k + k(k-1)/2.
    RenewalSystem chain;
    chain.a = {{1.0, 1.0, 0.0}, {0.0, 1.0, 1.0}, {0.0, 0.0, 1.0}};
    chain.t_step = 1.0;
    chain.grid_step = 0.125;
    chain.z = {unit_bump(8), unit_bump(8), unit_bump(8)};
    const RenewalSolution tri = renewal_solve(chain, 60);
    for (int g = 0; g < 481; ++g) {
        const double q = static_cast<double>(g / 8);
        CHECK(tri.f[0][static_cast<std::size_t>(g)] ==
              1.0 + q + 0.5 * q * (q - 1.0));
        CHECK(tri.f[1][static_cast<std::size_t>(g)] == 1.0 + q);
        CHECK(tri.f[2][static_cast<std::size_t>(g)] == 1.0);
    }
    CHECK(tri.residual <= 1e-15);

    // Subcritical geometric weights sum to 2 near the end of a long plateau.
    RenewalSystem geo;
    geo.a = {{0.5}};
    geo.t_step = 1.0;
    geo.grid_step = 0.125;
    geo.z = {unit_bump(240)};
    const RenewalSolution half = renewal_solve(geo, 30);
    double peak = 0.0;
    for (double v : half.f[0]) peak = std::max(peak, v);
    CHECK(peak == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("renewal solve matches a from-scratch recursion") {
    const double r = std::sqrt(2.0);
    RenewalSystem sys;
    sys.a = {{0.0, r}, {1.0 / r, 0.0}};
    sys.t_step = 0.7;
    sys.grid_step = 0.7 / 16.0;
    sys.z = {decaying_samples(20, 0.9, 1.0), decaying_samples(24, 0.8, 0.5)};
    const RenewalSolution sol = renewal_solve(sys, 25);
    CHECK(sol.residual <= 1e-12);

    const int grid = 25 * 16 + 1;
    std::vector<std::vector<double>> oracle(2,
                                            std::vector<double>(static_cast<std::size_t>(grid), 0.0));
    for (int g = 0; g < grid; ++g)
        for (int i = 0; i < 2; ++i) {
            double v = 0.0;
            if (static_cast<std::size_t>(g) < sys.z[static_cast<std::size_t>(i)].size())
                v = sys.z[static_cast<std::size_t>(i)][static_cast<std::size_t>(g)];
            if (g >= 16)
                for (int j = 0; j < 2; ++j)
                    v += sys.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                         oracle[static_cast<std::size_t>(j)][static_cast<std::size_t>(g - 16)];
            oracle[static_cast<std::size_t>(i)][static_cast<std::size_t>(g)] = v;
        }
    for (int i = 0; i < 2; ++i)
        for (int g = 0; g < grid; ++g)
            CHECK(sol.f[static_cast<std::size_t>(i)][static_cast<std::size_t>(g)] ==
                  doctest::Approx(oracle[static_cast<std::size_t>(i)][static_cast<std::size_t>(g)])
                      .epsilon(1e-10));
}

TEST_CASE("renewal validation guards ill-posed systems") {
    RenewalSystem sys;
    sys.a = {{1.0}};
    sys.t_step = 1.0;
    sys.grid_step = 0.125;
    sys.z = {unit_bump(8)};
    CHECK_NOTHROW(validate_renewal(sys));

    RenewalSystem bad = sys;
    bad.a = {{1.1}};
    CHECK_THROWS_AS(renewal_solve(bad, 10), divergence_error);
    bad = sys;
    bad.a = {{-0.5}};
    CHECK_THROWS_AS(validate_renewal(bad), invalid_input_error);
    bad = sys;
    bad.a = {{1.0, 0.0}};
    CHECK_THROWS_AS(validate_renewal(bad), invalid_input_error);
    bad = sys;
    bad.a.clear();
    CHECK_THROWS_AS(validate_renewal(bad), invalid_input_error);
    bad = sys;
    bad.grid_step = 0.3;
    CHECK_THROWS_AS(validate_renewal(bad), invalid_input_error);
    bad = sys;
    bad.t_step = -1.0;
    CHECK_THROWS_AS(validate_renewal(bad), invalid_input_error);
    bad = sys;
    bad.z.clear();
    CHECK_THROWS_AS(validate_renewal(bad), invalid_input_error);
    bad = sys;
    bad.z[0][3] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(validate_renewal(bad), invalid_input_error);
    CHECK_THROWS_AS(renewal_solve(sys, 0), invalid_input_error);
}

// ---------------------------------------------------------------------------
// Renewal limit
// ---------------------------------------------------------------------------

TEST_CASE("renewal limit is exact for a scalar unit weight") {
    RenewalSystem sys;
    sys.a = {{1.0}};
    sys.t_step = 1.0;
    sys.grid_step = 0.125;
    sys.z = {decaying_samples(24, 0.85, 1.0)};  // three periods, decaying
    const RenewalLimit lim = renewal_limit(sys, 40);
    REQUIRE(lim.b.size() == 1);
    CHECK(lim.b[0][0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lim.rho == 1);
    REQUIRE(lim.t_access == std::vector<long long>{1});
    // Once the periodized sum covers the whole support the superposition and
    // the limit coincide termwise.
    CHECK(lim.deviation <= 1e-12);
}

TEST_CASE("renewal limit prefactor carries the lattice step") {
    // With T = 2 the density matrix is 1/(T v.u) = 1/2, and only the
    // rho*T-weighted limit matches the solution exactly; a rho-weighted one
    // would sit at half the true value.
    RenewalSystem sys;
    sys.a = {{1.0}};
    sys.t_step = 2.0;
    sys.grid_step = 0.25;
    sys.z = {decaying_samples(16, 0.8, 1.0)};
    const RenewalLimit lim = renewal_limit(sys, 30);
    CHECK(lim.b[0][0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(lim.rho == 1);
    CHECK(lim.deviation <= 1e-12);
}

TEST_CASE("renewal limit of the two-cycle matches hand eigendata") {
    const double r = std::sqrt(2.0);
    RenewalSystem sys;
    sys.a = {{0.0, r}, {1.0 / r, 0.0}};
    sys.t_step = 0.8;
    sys.grid_step = 0.05;
    sys.z = {decaying_samples(12, 0.7, 1.0), decaying_samples(10, 0.7, 0.5)};
    const RenewalLimit lim = renewal_limit(sys, 50);
    CHECK(lim.rho == 2);
    REQUIRE(lim.t_access == std::vector<long long>{2, 1});
    // B = u v^T / (T v^T u) with u = (sqrt2, 1), v = (1, sqrt2).
    CHECK(lim.b[0][0] == doctest::Approx(0.5 / 0.8).epsilon(1e-10));
    CHECK(lim.b[0][1] == doctest::Approx(1.0 / (r * 0.8)).epsilon(1e-10));
    CHECK(lim.b[1][0] == doctest::Approx(1.0 / (2.0 * r * 0.8)).epsilon(1e-10));
    CHECK(lim.b[1][1] == doctest::Approx(0.5 / 0.8).epsilon(1e-10));
    CHECK(lim.deviation <= 1e-10);
}

TEST_CASE("renewal limit deviation decays monotonically for long decaying sources") {
    RenewalSystem sys;
    sys.a = {{1.0}};
    sys.t_step = 1.0;
    sys.grid_step = 0.125;
    // 35 sampled periods with slow exponential decay: the periodized sum
    // keeps missing a tail until deep into the horizon.
    std::vector<double> z(35 * 8);
    for (std::size_t k = 0; k < z.size(); ++k)
        z[k] = std::exp(-static_cast<double>(k) * 0.125 / 3.0);
    sys.z = {z};
    const RenewalLimit lim = renewal_limit(sys, 40);
    REQUIRE(lim.period_max.size() >= 30);
    CHECK(lim.period_max[12] > 1e-6);
    for (std::size_t q = 10; q + 1 < lim.period_max.size(); ++q)
        CHECK(lim.period_max[q + 1] <= lim.period_max[q] + 1e-12);
}

TEST_CASE("renewal limit refuses reducible, off-unit and non-decaying systems") {
    RenewalSystem sys;
    sys.a = {{1.0, 1.0}, {0.0, 1.0}};
    sys.t_step = 1.0;
    sys.grid_step = 0.125;
    sys.z = {unit_bump(8), unit_bump(8)};
    CHECK_THROWS_AS(renewal_limit(sys, 40), invalid_input_error);

    RenewalSystem scalar;
    scalar.t_step = 1.0;
    scalar.grid_step = 0.125;
    scalar.z = {unit_bump(8)};
    scalar.a = {{0.5}};
    CHECK_THROWS_AS(renewal_limit(scalar, 40), invalid_input_error);
    scalar.a = {{2.0}};
    CHECK_THROWS_AS(renewal_limit(scalar, 40), invalid_input_error);

    scalar.a = {{1.0}};
    scalar.z = {unit_bump(40)};  // five periods without decay
    CHECK_THROWS_AS(renewal_limit(scalar, 40), invalid_input_error);

    scalar.z = {decaying_samples(8, 0.5, 1.0)};
    CHECK_THROWS_AS(renewal_limit(scalar, 4), invalid_input_error);  // horizon
}

// ---------------------------------------------------------------------------
// Reducible growth
// ---------------------------------------------------------------------------

TEST_CASE("growth report fits the staircase and binomial families") {
    RenewalSystem stairs;
    stairs.a = {{1.0, 1.0}, {0.0, 1.0}};
    stairs.t_step = 1.0;
    stairs.grid_step = 0.125;
    stairs.z = {unit_bump(8), unit_bump(8)};

    const GrowthReport top = reducible_growth(stairs, 0, 60);
    CHECK(top.domain == 0);
    CHECK(top.reaches_basic);
    CHECK(top.m_expected == 1);
    CHECK(top.rho_j == 1);
    CHECK_FALSE(top.tends_to_zero);
    CHECK_FALSE(top.inconclusive);
    CHECK(std::abs(top.m_fitted - 1.0) <= 0.1);
    CHECK(std::abs(top.profile.mean_value - 1.0) <= 0.05);
    CHECK(top.profile.fold_residual <= 0.05);

    const GrowthReport bottom = reducible_growth(stairs, 1, 60);
    CHECK(bottom.m_expected == 0);
    CHECK(bottom.rho_j == 1);
    CHECK(std::abs(bottom.m_fitted) <= 1e-12);
    REQUIRE(all_bins_covered(bottom.profile));
    for (double m : bottom.profile.means) CHECK(m == doctest::Approx(1.0));
    CHECK(bottom.profile.fold_residual == 0.0);

    RenewalSystem chain;
    chain.a = {{1.0, 1.0, 0.0}, {0.0, 1.0, 1.0}, {0.0, 0.0, 1.0}};
    chain.t_step = 1.0;
    chain.grid_step = 0.125;
    chain.z = {unit_bump(8), unit_bump(8), unit_bump(8)};
    const GrowthReport quad = reducible_growth(chain, 0, 60);
    CHECK(quad.m_expected == 2);
    CHECK(std::abs(quad.m_fitted - 2.0) <= 0.1);

    // Separation between tiers at the horizon.
    const RenewalSolution sol = renewal_solve(chain, 60);
    CHECK(sol.f[0].back() / sol.f[1].back() >= 10.0);
}

TEST_CASE("growth report handles irreducible blocks and decaying components") {
    const double r = std::sqrt(2.0);
    RenewalSystem cyc;
    cyc.a = {{0.0, r}, {1.0 / r, 0.0}};
    cyc.t_step = 1.0;
    cyc.grid_step = 0.125;
    cyc.z = {decaying_samples(12, 0.7, 1.0), decaying_samples(12, 0.7, 0.5)};
    const GrowthReport flat = reducible_growth(cyc, 0, 40);
    CHECK(flat.m_expected == 0);
    CHECK(flat.rho_j == 2);
    CHECK_FALSE(flat.tends_to_zero);
    CHECK(std::abs(flat.m_fitted) <= 0.05);
    // The tail of a unit-growth irreducible solution is exactly periodic
    // once the source support is covered.
    CHECK(flat.profile.fold_residual <= 1e-9);

    RenewalSystem mixed;
    mixed.a = {{1.0, 1.0}, {0.0, 0.5}};
    mixed.t_step = 1.0;
    mixed.grid_step = 0.125;
    mixed.z = {unit_bump(8), unit_bump(8)};
    const GrowthReport live = reducible_growth(mixed, 0, 40);
    CHECK(live.m_expected == 0);
    CHECK(live.rho_j == 1);
    const GrowthReport dead = reducible_growth(mixed, 1, 40);
    CHECK(dead.tends_to_zero);
    CHECK_FALSE(dead.reaches_basic);
    CHECK(dead.m_expected == -1);
    CHECK(dead.rho_j == 0);
    const RenewalSolution sol = renewal_solve(mixed, 40);
    CHECK(sol.f[1].back() <= 1e-10);

    CHECK_THROWS_AS(reducible_growth(mixed, 2, 40), invalid_input_error);
    CHECK_THROWS_AS(reducible_growth(mixed, -1, 40), invalid_input_error);
    RenewalSystem sub;
    sub.a = {{0.5}};
    sub.t_step = 1.0;
    sub.grid_step = 0.125;
    sub.z = {unit_bump(8)};
    CHECK_THROWS_AS(reducible_growth(sub, 0, 40), invalid_input_error);
}

TEST_CASE("growth degrees and periods agree with the domain-family analysis") {
    for (const char* name : {"sg-omega3", "sg-tilde"}) {
        const BgdSystem sys = bgd_preset(name);
        const IncidenceAnalysis an = analyze(sys, kGammaSg);
        const IncidenceMatrix im = incidence_matrix(sys);
        RenewalSystem rs;
        rs.t_step = 1.0;
        rs.grid_step = 0.25;
        const int n = an.domain_count;
        rs.a.assign(static_cast<std::size_t>(n),
                    std::vector<double>(static_cast<std::size_t>(n), 0.0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                rs.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    static_cast<double>(im[static_cast<std::size_t>(i)]
                                          [static_cast<std::size_t>(j)]) /
                    an.psi;
        rs.z.assign(static_cast<std::size_t>(n), unit_bump(4));
        for (int dom = 0; dom < n; ++dom) {
            const GrowthReport rep = reducible_growth(rs, dom, 24);
            CHECK(rep.m_expected == an.chain_height[static_cast<std::size_t>(dom)]);
            CHECK(rep.rho_j == an.period_lcm[static_cast<std::size_t>(dom)]);
            CHECK(rep.reaches_basic ==
                  (an.chain_height[static_cast<std::size_t>(dom)] >= 0));
        }
    }
}

// ---------------------------------------------------------------------------
// CSV writers
// ---------------------------------------------------------------------------

TEST_CASE("profile and renewal CSV writers emit stable headers") {
    std::vector<double> ts, ys;
    for (int p = 0; p < 2; ++p)
        for (int b = 0; b < 4; ++b) {
            ts.push_back(p + 0.25 * b);
            ys.push_back(1.0 + b);
        }
    const PeriodicProfile prof = fold_profile(ts, ys, 1.0, 4);
    std::ostringstream ps;
    write_profile_csv(prof, ps);
    std::istringstream pl(ps.str());
    std::string line;
    REQUIRE(std::getline(pl, line));
    CHECK(line == "bin_center_t,mean,std,n_samples");
    int rows = 0;
    while (std::getline(pl, line)) ++rows;
    CHECK(rows == 4);

    RenewalSystem stairs;
    stairs.a = {{1.0, 1.0}, {0.0, 1.0}};
    stairs.t_step = 1.0;
    stairs.grid_step = 0.25;
    stairs.z = {unit_bump(4), unit_bump(4)};
    const RenewalSolution sol = renewal_solve(stairs, 5);
    std::ostringstream rs;
    write_renewal_csv(sol, rs);
    std::istringstream rl(rs.str());
    REQUIRE(std::getline(rl, line));
    CHECK(line == "x,f_1,f_2");
    REQUIRE(std::getline(rl, line));
    CHECK(line == "0,1,1");
    rows = 1;
    while (std::getline(rl, line)) ++rows;
    CHECK(rows == 21);
}

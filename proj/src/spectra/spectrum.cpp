#include "spectra/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "core/errors.hpp"
#include "spectra/eigen_dense.hpp"

namespace fractal_spectra {

std::string to_string(BoundaryCondition bc) {
    return bc == BoundaryCondition::dirichlet ? "dirichlet" : "neumann";
}

long long Spectrum::positive_count() const {
    long long total = 0;
    for (int m : multiplicities) total += m;
    return total;
}

void validate_spectrum(const Spectrum& s) {
    if (s.values.size() != s.multiplicities.size())
        throw consistency_error("spectrum: value/multiplicity length mismatch");
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        if (!(s.values[i] > 0.0) || !std::isfinite(s.values[i]))
            throw consistency_error("spectrum: values must be positive and finite");
        if (s.multiplicities[i] < 1)
            throw consistency_error("spectrum: multiplicities must be >= 1");
        if (i > 0 && !(s.values[i] > s.values[i - 1]))
            throw consistency_error("spectrum: values must be strictly ascending");
    }
    if (s.zero_multiplicity < 0) throw consistency_error("spectrum: negative zero multiplicity");
}

Spectrum solve_dense(const LevelForm& form, BoundaryCondition bc,
                     const std::string& domain_tag, int dense_cap) {
    const int n = form.free_count();
    if (n < 1) throw invalid_input_error("solve_dense: no free vertices");
    if (n > dense_cap)
        throw resource_limit_error(
            "solve_dense: " + std::to_string(n) + " free vertices exceed the dense cap of " +
            std::to_string(dense_cap) + "; use the spectral-decimation fast path where available");

    // M^{-1/2} H M^{-1/2} with the diagonal lumped mass.
    std::vector<double> inv_sqrt_m(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double m = form.mass[static_cast<std::size_t>(i)];
        if (!(m > 0.0) || !std::isfinite(m))
            throw invalid_input_error("solve_dense: mass weights must be positive and finite");
        inv_sqrt_m[static_cast<std::size_t>(i)] = 1.0 / std::sqrt(m);
    }
    std::vector<double> a(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (const SparseEntry& e : form.stiffness) {
        const double v = e.value * inv_sqrt_m[static_cast<std::size_t>(e.row)] *
                         inv_sqrt_m[static_cast<std::size_t>(e.col)];
        a[static_cast<std::size_t>(e.row) * static_cast<std::size_t>(n) +
          static_cast<std::size_t>(e.col)] += v;
        if (e.row != e.col)
            a[static_cast<std::size_t>(e.col) * static_cast<std::size_t>(n) +
              static_cast<std::size_t>(e.row)] += v;
    }

    std::vector<double> lam = symmetric_eigenvalues(std::move(a), n);

    const double top = std::max(std::fabs(lam.front()), std::fabs(lam.back()));
    const double zero_tol = std::max(1e-9 * top, 1e-300);
    if (lam.front() < -1e-6 * std::max(top, 1.0))
        throw consistency_error("solve_dense: stiffness is not positive semi-definite");

    Spectrum s;
    s.bc = bc;
    s.domain_tag = domain_tag;
    s.level = form.level;
    std::size_t i = 0;
    while (i < lam.size() && lam[i] <= zero_tol) {
        ++s.zero_multiplicity;
        ++i;
    }
    // Merge clusters at 1e-9 relative tolerance.
    while (i < lam.size()) {
        const double rep = lam[i];
        int mult = 1;
        ++i;
        while (i < lam.size() && lam[i] - rep <= 1e-9 * std::fabs(rep)) {
            ++mult;
            ++i;
        }
        s.values.push_back(rep);
        s.multiplicities.push_back(mult);
    }
    validate_spectrum(s);
    if (s.positive_count() + s.zero_multiplicity != n)
        throw consistency_error("solve_dense: eigenvalue count does not match the free dimension");
    return s;
}

long long count(const Spectrum& s, double x) {
    if (!std::isfinite(x)) throw invalid_input_error("count: x must be finite");
    const auto it = std::upper_bound(s.values.begin(), s.values.end(), x);
    long long total = 0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(it - s.values.begin()); ++i)
        total += s.multiplicities[i];
    return total;
}

CountingFunction::CountingFunction(const Spectrum& s) : values_(s.values) {
    cumulative_.reserve(values_.size());
    long long running = 0;
    for (int m : s.multiplicities) {
        running += m;
        cumulative_.push_back(running);
    }
}

long long CountingFunction::count(double x) const {
    if (!std::isfinite(x)) throw invalid_input_error("count: x must be finite");
    const auto it = std::upper_bound(values_.begin(), values_.end(), x);
    if (it == values_.begin()) return 0;
    return cumulative_[static_cast<std::size_t>(it - values_.begin()) - 1];
}

double partition_function(const Spectrum& s, double t) {
    if (!(t > 0.0)) throw invalid_input_error("partition_function: t must be positive");
    double total = 0.0;
    // Ascending eigenvalues: sum smallest terms last by walking backwards.
    for (std::size_t i = s.values.size(); i-- > 0;)
        total += static_cast<double>(s.multiplicities[i]) * std::exp(-s.values[i] * t);
    return total;
}

void write_spectrum_csv(const Spectrum& s, std::ostream& out) {
    out << "value,multiplicity\n";
    out << std::setprecision(17);
    // Header metadata as a comment-free side channel is avoided on purpose;
    // the loader only needs the numeric columns.
    for (std::size_t i = 0; i < s.values.size(); ++i)
        out << s.values[i] << ',' << s.multiplicities[i] << '\n';
}

Spectrum read_spectrum_csv(std::istream& in) {
    Spectrum s;
    std::string line;
    if (!std::getline(in, line) || line.rfind("value,multiplicity", 0) != 0)
        throw invalid_input_error("spectrum CSV: missing header");
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        double value = 0.0;
        char comma = 0;
        int mult = 0;
        if (!(row >> value >> comma >> mult) || comma != ',')
            throw invalid_input_error("spectrum CSV: malformed row '" + line + "'");
        s.values.push_back(value);
        s.multiplicities.push_back(mult);
    }
    validate_spectrum(s);
    return s;
}

void write_counting_csv(const Spectrum& s, double x_lo, double x_hi, int points,
                        std::ostream& out) {
    if (!(x_lo > 0.0) || !(x_hi > x_lo) || points < 2)
        throw invalid_input_error("counting CSV: need 0 < x_lo < x_hi and at least 2 points");
    const CountingFunction rho(s);
    out << "x,count\n";
    out << std::setprecision(17);
    const double step = std::log(x_hi / x_lo) / (points - 1);
    for (int k = 0; k < points; ++k) {
        const double x = x_lo * std::exp(step * k);
        out << x << ',' << rho.count(x) << '\n';
    }
}

}  // namespace fractal_spectra

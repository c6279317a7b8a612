// Spectra: generalized eigenvalues of (stiffness, lumped mass) pairs, the
// eigenvalue counting function, partition functions and CSV round-tripping.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "forms/assemble.hpp"

namespace fractal_spectra {

enum class BoundaryCondition { dirichlet, neumann };

std::string to_string(BoundaryCondition bc);

// Positive spectrum with multiplicities; zero modes are counted separately and
// excluded from every counting quantity.
struct Spectrum {
    std::vector<double> values;        // distinct, ascending, strictly positive
    std::vector<int> multiplicities;   // same length, each >= 1
    BoundaryCondition bc = BoundaryCondition::dirichlet;
    std::string domain_tag;
    int level = 0;
    int zero_multiplicity = 0;

    int distinct_count() const { return static_cast<int>(values.size()); }
    long long positive_count() const;
    double max_value() const { return values.empty() ? 0.0 : values.back(); }
};

void validate_spectrum(const Spectrum& s);

// All generalized eigenvalues of H u = lambda M u through the M^{-1/2}
// similarity reduction; values merged at 1e-9 relative tolerance. Free counts
// above `dense_cap` are refused with resource_limit_error that names the
// decimation fast path.
Spectrum solve_dense(const LevelForm& form,
                     BoundaryCondition bc = BoundaryCondition::dirichlet,
                     const std::string& domain_tag = "", int dense_cap = 4000);

// Right-continuous counting of positive eigenvalues <= x.
long long count(const Spectrum& s, double x);

// Cached cumulative counts for dense grid evaluation.
class CountingFunction {
  public:
    explicit CountingFunction(const Spectrum& s);
    long long count(double x) const;
    double operator()(double x) const { return static_cast<double>(count(x)); }

  private:
    std::vector<double> values_;
    std::vector<long long> cumulative_;
};

// Sum of multiplicity * exp(-lambda t) over positive eigenvalues.
double partition_function(const Spectrum& s, double t);

// CSV with header "value,multiplicity", 17 significant digits. The reader
// skips blank lines and '#'-prefixed comment lines (metadata footers).
void write_spectrum_csv(const Spectrum& s, std::ostream& out);
Spectrum read_spectrum_csv(std::istream& in);

// Counting samples on a geometric grid, header "x,count".
void write_counting_csv(const Spectrum& s, double x_lo, double x_hi, int points,
                        std::ostream& out);

}  // namespace fractal_spectra

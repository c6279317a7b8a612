// Incidence analysis of a domain family: the boundary-transfer matrix, its
// communicating classes, growth rate and Perron data, the exact self-similar
// domain measures, and the resulting boundary measure on refinement words.
#pragma once

#include <vector>

#include "bgd/systems.hpp"
#include "core/fractal.hpp"
#include "core/rational.hpp"

namespace fractal_spectra {

using IncidenceMatrix = std::vector<std::vector<long long>>;

// a[i][j] = number of boundary-crossing letters of domain i targeting j.
IncidenceMatrix incidence_matrix(const BgdSystem& sys);

// Strongly connected component of the domain digraph. A free singleton is a
// single domain without a self-returning path; it carries no cycle data.
struct CommClass {
    std::vector<int> members;     // 0-based domain indices, ascending
    bool communicating = false;   // false: free singleton
    double radius = 0.0;          // spectral radius of the class submatrix
    bool basic = false;           // radius equals the global growth rate
    int height = -1;              // longest chain of basic classes below, basic only
    long long period = 0;         // gcd of member return periods, 0 for singletons
    std::vector<double> perron;        // class-local right eigenvector, > 0
    std::vector<double> perron_left;   // class-local left eigenvector, l1-normalized
};

struct IncidenceAnalysis {
    IncidenceMatrix matrix;
    int domain_count = 0;
    double gamma = 0.0;   // geometric scale factor in (0,1)
    double psi = 0.0;     // spectral radius of the matrix
    double d = 0.0;       // boundary growth exponent log(psi)/(-log(gamma))

    std::vector<CommClass> classes;
    std::vector<int> class_of;       // domain -> index into classes
    std::vector<int> basic_classes;  // indices of basic classes, ascending

    std::vector<long long> return_period;  // per domain: gcd of closed-walk
                                           // lengths through it, 0 if none
    long long lattice_gcd = 0;             // gcd of return periods over basic classes
    std::vector<long long> period_lcm;     // per domain: lcm of periods of the
                                           // basic classes it reaches, 0 if none
    std::vector<int> chain_height;         // per domain: max height of reachable
                                           // basic classes, -1 if none
    std::vector<std::vector<int>> access_steps;  // shortest path lengths, -1 if
                                                 // unreachable, 0 on the diagonal

    bool irreducible = false;
    std::vector<double> b;            // right eigenvector of matrix/psi when
                                      // irreducible; scaled so left.b = 1
    std::vector<double> left_vector;  // l1-normalized left eigenvector
    std::vector<Rational> c;          // exact domain measures
    std::vector<double> boundary_total;  // total boundary measure per domain,
                                         // 0 when its class carries none
};

// Right/left Perron data of an irreducible non-negative integer matrix,
// refined until the eigen-residual drops below 1e-12 relatively. The left
// vector is l1-normalized and the right vector is scaled so left.b = 1.
// Throws invalid_input_error when the matrix is reducible or empty.
struct PerronData {
    double radius = 0.0;
    std::vector<double> right;
    std::vector<double> left;
};
PerronData perron_data(const IncidenceMatrix& a);

// Full analysis. gamma must lie in (0,1). Throws consistency_error when the
// growth rate reaches the alphabet size (the measure solve would degenerate)
// or when an irreducible matrix with growth rate 1 is not a permutation.
IncidenceAnalysis analyze(const BgdSystem& sys, double gamma);

// Measure of the boundary piece reached from `domain` by following the given
// letters through successive boundary edges: psi^-m times the Perron weight
// of the final domain. The walk must stay inside the starting domain's basic
// class; otherwise the piece carries no canonical measure and
// invalid_input_error is thrown.
double boundary_measure(const BgdSystem& sys, const IncidenceAnalysis& analysis,
                        int domain, const Word& letters);

}  // namespace fractal_spectra

// Substitution systems describing families of open subdomains of a p.c.f.
// self-similar set. Each domain partitions the alphabet into letters whose
// cells lie inside the domain, letters whose cells miss it, and boundary
// letters that map onto another domain of the family; the boundary data is a
// trace on the cell corners. Geometry is derived from this data, never the
// other way around.
#pragma once

#include <string>
#include <vector>

namespace fractal_spectra {

// One boundary-crossing letter: the open set restricted to cell `letter` is
// the image of domain `target` under that cell map. `extra_boundary` lists
// corner slots whose images must be added to the boundary when descending
// through this edge; only relaxed systems (see BgdSystem::widetilde) may use
// it.
struct BgdEdge {
    int letter = 0;                   // 1-based letter into the fractal's maps
    int target = 0;                   // 0-based index into BgdSystem::domains
    std::vector<int> extra_boundary;  // 1-based corner slots, usually empty
};

struct BgdDomain {
    std::string label;
    std::vector<int> inside_letters;   // cells contained in the open set
    std::vector<int> outside_letters;  // cells disjoint from the open set
    std::vector<BgdEdge> edges;        // cells crossed by the boundary
    std::vector<int> trace_slots;      // 1-based corner slots on the boundary
    std::vector<int> member_slots;     // 1-based corner slots in the open set
};

// A family of domains closed under the cell substitution. `widetilde` relaxes
// the per-cell boundary identity by finitely many corner points (declared on
// the edges). `incidence_only` marks data whose letter/target assignments are
// correct only up to a symmetry of the fractal: counting-type operations stay
// valid, pointwise realization is refused.
struct BgdSystem {
    std::string name;
    std::string fractal;   // matches Fractal::name ("sg", "snowflake")
    bool widetilde = false;
    bool incidence_only = false;
    int letter_count = 0;    // N, alphabet size of the fractal
    int boundary_count = 0;  // Q, number of corner slots per cell
    std::vector<BgdDomain> domains;

    int domain_count() const { return static_cast<int>(domains.size()); }
};

// Structural validation: every letter of every domain appears in exactly one
// of inside/outside/edges, targets and slots are in range, trace and member
// slots are disjoint, each domain has at least one edge, no domain is fully
// inside (its boundary would be empty), and extra boundary slots appear only
// on relaxed systems. Throws invalid_input_error.
void validate_system(const BgdSystem& sys);

// Named preset families:
//   "sg-cut-bottom"       gasket minus the closed bottom edge (1 domain)
//   "sg-halves"           left half by the vertical median + gasket minus a
//                         corner (2 domains)
//   "sg-thirds"           parts above horizontal lines at one and two thirds
//                         of the height (2 domains)
//   "sg-omega3"           staircase domain built from the half-cut family
//                         (6 domains)
//   "sg-tilde"            comb domain needing the relaxed boundary identity
//                         (5 domains, widetilde)
//   "snowflake-koch"      snowflake domains bounded by outer Koch arcs,
//                         folded by the hexagon rotation (3 domains,
//                         incidence-only)
//   "snowflake-koch-full" the same family with every rotated copy listed
//                         explicitly (18 domains, realizable)
// Throws missing_input_error for unknown names.
BgdSystem bgd_preset(const std::string& name);

std::vector<std::string> list_bgd_presets();

}  // namespace fractal_spectra

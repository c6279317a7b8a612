#include "spectra/decimation.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace fractal_spectra {

namespace {

constexpr double kForbidden[] = {2.0, 5.0, 6.0};

bool forbidden(double lambda) {
    for (double f : kForbidden)
        if (std::fabs(lambda - f) <= 1e-12) return true;
    return false;
}

// Closed-form (3^{m+1} -+ 3)/2 dimensions used for the bookkeeping audit.
long long dirichlet_dim(int m) {
    long long p = 1;
    for (int k = 0; k <= m; ++k) p *= 3;
    return (p - 3) / 2;
}

long long vertex_dim(int m) {
    long long p = 1;
    for (int k = 0; k <= m; ++k) p *= 3;
    return (p + 3) / 2;
}

}  // namespace

Spectrum decimate_sg(int level, BoundaryCondition bc) {
    if (level < 1) throw invalid_input_error("decimate_sg: level must be >= 1");
    if (level > level_cap())
        throw resource_limit_error("decimate_sg: level " + std::to_string(level) +
                                   " exceeds the level cap " + std::to_string(level_cap()));

    // Graph-Laplacian eigenvalues with multiplicities, evolved level by level:
    // every value branches into the preimages (5 +- sqrt(25 - 4 lambda))/2 that
    // avoid the forbidden set, and fresh series are born at 5 and 6.
    std::vector<std::pair<double, long long>> spec;
    int base = 0;
    if (bc == BoundaryCondition::dirichlet) {
        spec = {{2.0, 1}, {5.0, 2}};
        base = 1;
    } else {
        spec = {{0.0, 1}, {6.0, 2}};
        base = 0;
    }
    for (int lev = base + 1; lev <= level; ++lev) {
        std::vector<std::pair<double, long long>> next;
        next.reserve(2 * spec.size() + 2);
        for (const auto& [lambda, mult] : spec) {
            const double root = std::sqrt(25.0 - 4.0 * lambda);
            for (double sign : {-1.0, 1.0}) {
                const double child = (5.0 + sign * root) / 2.0;
                if (!forbidden(child)) next.emplace_back(child, mult);
            }
        }
        long long pow3 = 1;  // 3^{lev-1}
        for (int k = 1; k < lev; ++k) pow3 *= 3;
        const long long born5 = (bc == BoundaryCondition::dirichlet)
                                    ? (lev >= 2 ? (pow3 + 3) / 2 : 0)
                                    : (pow3 - 1) / 2;
        const long long born6 = (bc == BoundaryCondition::dirichlet) ? (3 * pow3 - 3) / 2
                                                                     : (3 * pow3 + 3) / 2;
        if (born5 > 0) next.emplace_back(5.0, born5);
        if (born6 > 0) next.emplace_back(6.0, born6);
        spec = std::move(next);
    }

    std::sort(spec.begin(), spec.end());
    Spectrum out;
    out.bc = bc;
    out.domain_tag = "sg";
    out.level = level;
    const double scale = 1.5 * std::pow(5.0, level);
    long long total = 0;
    for (std::size_t i = 0; i < spec.size();) {
        const double lambda = spec[i].first;
        long long mult = 0;
        while (i < spec.size() && spec[i].first - lambda <= 1e-12 * std::max(lambda, 1.0)) {
            mult += spec[i].second;
            ++i;
        }
        total += mult;
        if (lambda <= 1e-12) {
            out.zero_multiplicity += static_cast<int>(mult);
        } else {
            out.values.push_back(scale * lambda);
            out.multiplicities.push_back(static_cast<int>(mult));
        }
    }

    const long long expected =
        (bc == BoundaryCondition::dirichlet) ? dirichlet_dim(level) : vertex_dim(level);
    if (total != expected)
        throw consistency_error("decimate_sg: multiplicity bookkeeping lost eigenvalues (got " +
                                std::to_string(total) + ", expected " + std::to_string(expected) +
                                ")");
    validate_spectrum(out);
    return out;
}

Spectrum decimate_spectrum(const Fractal& f, int level, BoundaryCondition bc) {
    if (f.name != "sg")
        throw invalid_input_error("spectral decimation is implemented only for the gasket preset");
    return decimate_sg(level, bc);
}

}  // namespace fractal_spectra

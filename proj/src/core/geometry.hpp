// Exact planar geometry over the field Q(sqrt(3)). All preset fractal vertex
// coordinates (equilateral triangle, regular hexagon) live in this field, so
// vertex identification across cell gluings is exact, never tolerance-based.
#pragma once

#include <string>

#include "core/rational.hpp"

namespace fractal_spectra {

// Number a + b*sqrt(3) with rational a, b. Representation is unique, so
// equality is componentwise.
struct QuadExt {
    Rational a;
    Rational b;

    QuadExt() : a(0), b(0) {}
    QuadExt(int v) : a(v), b(0) {}  // NOLINT: implicit by design
    QuadExt(Rational rat) : a(std::move(rat)), b(0) {}
    QuadExt(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_)) {}

    // Sign of the real value, computed exactly (compares a^2 against 3 b^2).
    int sign() const;
    double value() const;
};

QuadExt operator+(const QuadExt& l, const QuadExt& r);
QuadExt operator-(const QuadExt& l, const QuadExt& r);
QuadExt operator-(const QuadExt& v);
QuadExt operator*(const QuadExt& l, const QuadExt& r);
bool operator==(const QuadExt& l, const QuadExt& r);
bool operator!=(const QuadExt& l, const QuadExt& r);
// Numeric (real-value) order; exact.
bool operator<(const QuadExt& l, const QuadExt& r);

std::string to_string(const QuadExt& v);

struct Pt {
    QuadExt x;
    QuadExt y;
};

bool operator==(const Pt& l, const Pt& r);
bool operator!=(const Pt& l, const Pt& r);
// Lexicographic by (x, y) in numeric order; used as an exact map key.
bool operator<(const Pt& l, const Pt& r);

std::string to_string(const Pt& p);

// Affine map p -> M p + t with entries in Q(sqrt(3)). Covers the presets
// (pure scalings) and rotational maps whose matrices live in the field.
struct AffineMap {
    QuadExt m00, m01, m10, m11;
    QuadExt tx, ty;

    Pt operator()(const Pt& p) const;
};

// Scaling by `ratio` about `center`: p -> center + ratio * (p - center).
AffineMap scaling_about(const Rational& ratio, const Pt& center);

// Composition: apply g first, then f.
AffineMap compose(const AffineMap& f, const AffineMap& g);

}  // namespace fractal_spectra

#include "core/geometry.hpp"

#include <cmath>

namespace fractal_spectra {

int QuadExt::sign() const {
    const int sa = a.sign();
    const int sb = b.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: compare |a| with |b|*sqrt(3) via squares.
    const Rational a2 = a * a;
    const Rational b23 = 3 * b * b;
    if (a2 == b23) return 0;
    return (a2 > b23) ? sa : sb;
}

double QuadExt::value() const {
    return rational_to_double(a) + rational_to_double(b) * std::sqrt(3.0);
}

QuadExt operator+(const QuadExt& l, const QuadExt& r) { return {l.a + r.a, l.b + r.b}; }
QuadExt operator-(const QuadExt& l, const QuadExt& r) { return {l.a - r.a, l.b - r.b}; }
QuadExt operator-(const QuadExt& v) { return {-v.a, -v.b}; }

QuadExt operator*(const QuadExt& l, const QuadExt& r) {
    // (a + b s)(c + d s) = (ac + 3bd) + (ad + bc) s,  s = sqrt(3).
    return {l.a * r.a + 3 * l.b * r.b, l.a * r.b + l.b * r.a};
}

bool operator==(const QuadExt& l, const QuadExt& r) { return l.a == r.a && l.b == r.b; }
bool operator!=(const QuadExt& l, const QuadExt& r) { return !(l == r); }
bool operator<(const QuadExt& l, const QuadExt& r) { return (l - r).sign() < 0; }

std::string to_string(const QuadExt& v) {
    if (v.b == 0) return rational_to_string(v.a);
    return rational_to_string(v.a) + "+" + rational_to_string(v.b) + "*sqrt(3)";
}

bool operator==(const Pt& l, const Pt& r) { return l.x == r.x && l.y == r.y; }
bool operator!=(const Pt& l, const Pt& r) { return !(l == r); }

bool operator<(const Pt& l, const Pt& r) {
    if (l.x != r.x) return l.x < r.x;
    return l.y < r.y;
}

std::string to_string(const Pt& p) { return "(" + to_string(p.x) + ", " + to_string(p.y) + ")"; }

Pt AffineMap::operator()(const Pt& p) const {
    return {m00 * p.x + m01 * p.y + tx, m10 * p.x + m11 * p.y + ty};
}

AffineMap scaling_about(const Rational& ratio, const Pt& center) {
    const QuadExt r{ratio};
    const QuadExt one_minus{Rational(1) - ratio};
    AffineMap m;
    m.m00 = r;
    m.m01 = QuadExt{};
    m.m10 = QuadExt{};
    m.m11 = r;
    m.tx = one_minus * center.x;
    m.ty = one_minus * center.y;
    return m;
}

AffineMap compose(const AffineMap& f, const AffineMap& g) {
    AffineMap h;
    h.m00 = f.m00 * g.m00 + f.m01 * g.m10;
    h.m01 = f.m00 * g.m01 + f.m01 * g.m11;
    h.m10 = f.m10 * g.m00 + f.m11 * g.m10;
    h.m11 = f.m10 * g.m01 + f.m11 * g.m11;
    h.tx = f.m00 * g.tx + f.m01 * g.ty + f.tx;
    h.ty = f.m10 * g.tx + f.m11 * g.ty + f.ty;
    return h;
}

}  // namespace fractal_spectra

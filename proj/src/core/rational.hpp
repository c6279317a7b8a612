// Exact rational arithmetic used for geometry, energy forms and incidence data.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace fractal_spectra {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "p/q", "p", "-p/q" with arbitrary precision. Throws invalid_input_error
// on malformed text or zero denominator.
Rational parse_rational(const std::string& text);

// Canonical text form: "p/q" when the denominator is not 1, else "p".
std::string rational_to_string(const Rational& q);

double rational_to_double(const Rational& q);

}  // namespace fractal_spectra

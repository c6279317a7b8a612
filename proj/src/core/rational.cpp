#include "core/rational.hpp"

#include <cctype>

#include "core/errors.hpp"

namespace fractal_spectra {

namespace {

bool is_integer_text(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

// cpp_int rejects a leading '+'; accept it here and drop it.
BigInt parse_integer(const std::string& s) {
    return BigInt(s[0] == '+' ? s.substr(1) : s);
}

}  // namespace

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!is_integer_text(text)) {
            throw invalid_input_error("not a rational number: '" + text + "'");
        }
        return Rational(parse_integer(text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_integer_text(num) || !is_integer_text(den)) {
        throw invalid_input_error("not a rational number: '" + text + "'");
    }
    BigInt d = parse_integer(den);
    if (d == 0) {
        throw invalid_input_error("zero denominator in rational: '" + text + "'");
    }
    return Rational(parse_integer(num), d);
}

std::string rational_to_string(const Rational& q) {
    const BigInt num = boost::multiprecision::numerator(q);
    const BigInt den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

double rational_to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace fractal_spectra

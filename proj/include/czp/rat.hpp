// Exact rational scalar used by the exact evaluation backend.
//
// Config files carry decimal literals like "-.642"; both backends must see
// the *same* number, so decimals are parsed into exact fractions here and the
// float backend derives its doubles from these.

#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace czp {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline long double to_ldouble(const Rational& r) { return r.convert_to<long double>(); }

// Parse "3", "-0.642", ".5", "4/7", "-13/10" into an exact Rational.
// Scientific notation is not accepted; config values never need it.
inline Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty numeric literal");

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: " + text);
        return Rational(num, den);
    }

    bool neg = false;
    size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');

    BigInt num = 0, den = 1;
    bool any_digit = false, seen_dot = false;
    for (; i < s.size(); ++i) {
        if (s[i] == '.') {
            if (seen_dot) throw std::invalid_argument("bad numeric literal: " + text);
            seen_dot = true;
            continue;
        }
        if (s[i] < '0' || s[i] > '9')
            throw std::invalid_argument("bad numeric literal: " + text);
        num = num * 10 + (s[i] - '0');
        if (seen_dot) den *= 10;
        any_digit = true;
    }
    if (!any_digit) throw std::invalid_argument("bad numeric literal: " + text);
    Rational r(num, den);
    return neg ? Rational(-r) : r;
}

inline Rational factorial_rat(unsigned n) {
    BigInt f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return Rational(f);
}

}  // namespace czp

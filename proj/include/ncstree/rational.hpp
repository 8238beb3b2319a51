#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ncstree {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonicalized p/q.
inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(const Integer& num, const Integer& den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "p", "-p" or "p/q"; throws ParseError on malformed text or q = 0.
Rational parse_rational(std::string_view text);

/// "p" for integers, otherwise "p/q".
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

Integer factorial(unsigned n);

/// (-1)^k as a Rational.
inline Rational sign_power(long k) { return (k % 2 == 0) ? Rational(1) : Rational(-1); }

} // namespace ncstree

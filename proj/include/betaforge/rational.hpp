#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "betaforge/errors.hpp"

namespace betaforge {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline int sign_of(const Rational& r) {
    return r.sign();
}

inline Rational rational_abs(const Rational& r) {
    return r < 0 ? Rational(-r) : r;
}

/// Exact rational power, n >= 0.
Rational rational_pow(const Rational& base, unsigned long n);

/// Nearest double (boost's conversion rounds; good enough for display,
/// never used for certified decisions).
inline double to_double(const Rational& r) {
    return r.convert_to<double>();
}

/// Parses "p/q", an integer, or a plain decimal like "2.47098" into the
/// exact rational it denotes. Throws Error on malformed input.
Rational parse_rational(const std::string& text);

} // namespace betaforge

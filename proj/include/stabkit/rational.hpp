#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace stabkit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const BigInt& num, const BigInt& den) { return Rational(num, den); }

inline BigInt ipow(std::uint64_t base, std::uint64_t exp) {
  BigInt r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r *= base;
  return r;
}

/// Parses "p/q", an integer, or a finite decimal such as "0.005" into an exact rational.
Rational parse_rational(std::string_view text);

/// "p/q" (or "p" when the denominator is 1).
std::string to_string(const Rational& r);

double to_double(const Rational& r);

/// Smallest integer >= r.
BigInt ceil(const Rational& r);

/// Rational with denominator 2^40, rounded toward -inf (down) or +inf (up).
Rational rational_below(double x);
Rational rational_above(double x);

}  // namespace stabkit

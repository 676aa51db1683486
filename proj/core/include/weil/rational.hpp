#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace weil {

/// Arbitrary-precision rational, always kept in lowest terms.
using Rational = mpq_class;

/// Parses `p`, `p/q`, or a decimal literal such as `-1.25` into an exact
/// rational. Throws ParseError on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

/// num/den reduced to lowest terms; den must be nonzero.
inline Rational fraction(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational factorial(unsigned n);

/// Exact square root if q is the square of a rational.
bool exact_sqrt(const Rational& q, Rational& root);

}  // namespace weil

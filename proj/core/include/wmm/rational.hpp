#pragma once

// Exact scalar arithmetic: arbitrary-precision rationals and integers
// (GMP-backed) plus the small number-theoretic helpers used throughout
// the moment formulas (factorials, falling factorials, binomials with
// the empty-composition convention).

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wmm {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonicalized rational from an integer pair.
Rational make_rational(long num, long den = 1);

/// Parse "p", "p/q", or a plain decimal string like "-0.25" into an exact
/// rational. Throws std::invalid_argument on malformed input or q = 0.
Rational parse_rational(const std::string& text);

/// Canonical textual form: "p" when the denominator is 1, else "p/q".
std::string format_rational(const Rational& value);

double to_double(const Rational& value);

/// n! for n >= 0.
Integer factorial(int n);

/// Falling factorial (n)_k = n(n-1)...(n-k+1); zero when k > n, one when k = 0.
Integer falling_factorial(int n, int k);

/// Binomial coefficient under the stars-and-bars reading used by the
/// composition identities: C(a,b) = 0 for b < 0, a < b, or a < 0, except
/// C(-1,0) = 1 (the count of the empty weak composition).
Integer binomial(long a, long b);

/// Elementwise scaling hook shared with the polynomial rings (found by ADL
/// from generic code such as the complete Bell polynomial).
inline Rational scale(const Rational& value, const Rational& factor) { return value * factor; }

}  // namespace wmm

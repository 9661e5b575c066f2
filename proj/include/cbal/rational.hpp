#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cbal {

// Exact arithmetic used by the oracle and by all instance data.
using Rational = mpq_class;

/// Parses "p/q", integer, or decimal ("0.125", "1e-3") text into an exact rational.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Exact conversion of a finite double (every double is a dyadic rational).
Rational rational_from_double(double value);

/// Canonical text: "3", "-1/8", ... Always re-parses to the same value.
std::string to_string(const Rational& value);

/// Finite decimal text if the denominator is of the form 2^a 5^b, empty otherwise.
std::string to_decimal_string(const Rational& value);

inline double to_double(const Rational& value) { return value.get_d(); }

/// Smallest double that is >= value, so a bracket never lands just below an exact load.
double to_double_up(const Rational& value);

inline Rational rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Integer square root if `value` is a perfect square of a rational, else -1.
Rational exact_sqrt_or_negative(const Rational& value);

}  // namespace cbal

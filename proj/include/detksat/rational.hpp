#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace detksat {

using Rational = mpq_class;
using Integer = mpz_class;

/// "p/q" in lowest terms; integers print as "p/1".
std::string to_string(const Rational& q);

/// Parses "p/q" or "p". Throws std::invalid_argument on malformed input or a
/// zero denominator.
Rational parse_rational(std::string_view text);

/// base^e for a non-negative exponent.
Rational pow(const Rational& base, unsigned long e);

/// log2 of a positive rational, in extended precision.
long double log2(const Rational& q);

long double to_long_double(const Rational& q);

}  // namespace detksat

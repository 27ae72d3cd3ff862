#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace nilcenter {

// Arbitrary precision rationals. mpq_class keeps values canonical
// (reduced, positive denominator) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p" or "p/q" (optional leading sign). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Exact decimal literal ("1.25", "-3e-2") to the rational it denotes.
Rational parse_decimal(std::string_view text);

std::string to_string(const Rational& q);

inline int sign(const Rational& q) { return sgn(q); }

} // namespace nilcenter

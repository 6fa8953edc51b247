#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace realtopo {

using Rational = mpq_class;
using Integer = mpz_class;

/// Builds num/den in canonical form. `den` must be nonzero.
Rational make_rational(long num, long den = 1);

/// Parses "p" or "p/q" (optional leading sign). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);

/// Least positive common multiple of two positive rationals.
Rational rational_lcm(const Rational& a, const Rational& b);

/// Narrow an integer to a sequence index; throws std::overflow_error when it
/// does not fit in int64.
std::int64_t to_index(const Integer& z);

inline Rational min_of(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max_of(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace realtopo

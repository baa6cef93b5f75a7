#ifndef DIOPH_NUMERIC_HPP
#define DIOPH_NUMERIC_HPP

#include <gmpxx.h>

#include <cstddef>
#include <string>

namespace dioph {

using BigInt = mpz_class;

/// Reduced fraction with arbitrary-precision numerator and positive denominator.
using ExactRational = mpq_class;

/// base^exp as a big integer.
BigInt ipow(unsigned long base, std::size_t exp);

/// Natural logarithm of |n|; -inf for zero. Works for values far beyond double range.
double log_abs(const BigInt& n);

/// Natural logarithm of a positive rational; -inf for zero.
double log_value(const ExactRational& r);

/// Parses "p/q" or "p" into a reduced rational. Throws std::invalid_argument.
ExactRational parse_rational(const std::string& text);

std::string to_string(const ExactRational& r);

/// floor(r) for a rational.
BigInt floor_of(const ExactRational& r);

}  // namespace dioph

#endif

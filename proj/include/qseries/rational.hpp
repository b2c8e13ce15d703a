#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace qseries {

// Exact coefficients. mpq_class keeps values canonical (lowest terms,
// positive denominator) after every arithmetic operation.
using Rational = mpq_class;
using BigInt = mpz_class;

// Accepts "p", "-p", "p/r". Throws std::invalid_argument on anything else or
// on a zero denominator.
Rational parse_rational(std::string_view text);

// "p" for integers, "p/r" otherwise.
std::string to_string(const Rational& value);

// num/den in lowest terms. mpq_class's two-argument constructor does not
// canonicalize, and comparisons on non-canonical values are wrong.
inline Rational ratio(std::int64_t num, std::int64_t den) {
  Rational r(static_cast<long>(num), static_cast<long>(den));
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& value) { return value.get_den() == 1; }

// Throws DomainError if the value is not an integer or does not fit.
std::int64_t to_int64(const Rational& value);

std::int64_t lcm64(std::int64_t a, std::int64_t b);

// Exact n-th root of a rational, if one exists. Negative inputs have a
// (negative) real root only for odd n; for even n they yield nullopt.
std::optional<Rational> exact_root(const Rational& value, unsigned n);

}  // namespace qseries

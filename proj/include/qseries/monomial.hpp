#pragma once

#include <string>

#include "qseries/rational.hpp"
#include "qseries/series.hpp"

namespace qseries {

/// A term +-q^e. Theta and Lambert arguments are built from these. The
/// exponent may be negative for intermediate quantities such as y/x; each
/// consumer checks the range it needs.
struct SignedMonomial {
  int sign = 1;
  Rational exponent = 0;

  static SignedMonomial q_pow(const Rational& e, int sign = 1) { return {sign, e}; }

  SignedMonomial operator-() const { return {-sign, exponent}; }

  friend bool operator==(const SignedMonomial& a, const SignedMonomial& b) {
    return a.sign == b.sign && a.exponent == b.exponent;
  }
};

SignedMonomial operator*(const SignedMonomial& a, const SignedMonomial& b);
SignedMonomial operator/(const SignedMonomial& a, const SignedMonomial& b);
SignedMonomial pow(const SignedMonomial& a, std::int64_t k);

/// Smallest granularity whose lattice contains the exponent.
std::int64_t granularity_of(const Rational& exponent);

/// The monomial as a series known to order `order` in q.
QSeries to_series(const SignedMonomial& m, std::int64_t order);

std::string to_string(const SignedMonomial& m);

}  // namespace qseries

#include "qseries/monomial.hpp"

#include "qseries/errors.hpp"

namespace qseries {

SignedMonomial operator*(const SignedMonomial& a, const SignedMonomial& b) {
  return {a.sign * b.sign, a.exponent + b.exponent};
}

SignedMonomial operator/(const SignedMonomial& a, const SignedMonomial& b) {
  return {a.sign * b.sign, a.exponent - b.exponent};
}

SignedMonomial pow(const SignedMonomial& a, std::int64_t k) {
  const int sign = (a.sign < 0 && (k % 2 != 0)) ? -1 : 1;
  return {sign, a.exponent * Rational(k)};
}

std::int64_t granularity_of(const Rational& exponent) {
  if (!exponent.get_den().fits_slong_p()) throw GranularityError("exponent denominator too large");
  return exponent.get_den().get_si();
}

QSeries to_series(const SignedMonomial& m, std::int64_t order) {
  return QSeries::monomial(m.sign, m.exponent, granularity_of(m.exponent), order);
}

std::string to_string(const SignedMonomial& m) {
  std::string body;
  if (m.exponent == 0) {
    body = "1";
  } else if (m.exponent == 1) {
    body = "q";
  } else if (is_integer(m.exponent) && sgn(m.exponent) > 0) {
    body = "q^" + qseries::to_string(m.exponent);
  } else {
    body = "q^(" + qseries::to_string(m.exponent) + ")";
  }
  return (m.sign < 0 ? "-" : "") + body;
}

}  // namespace qseries

#include "qseries/rational.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

#include "qseries/errors.hpp"

namespace qseries {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

std::optional<BigInt> exact_root(const BigInt& value, unsigned n) {
  BigInt root;
  if (mpz_root(root.get_mpz_t(), value.get_mpz_t(), n) == 0) return std::nullopt;
  return root;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  BigInt n(std::string(num), 10);
  BigInt d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& value) {
  if (is_integer(value)) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::int64_t to_int64(const Rational& value) {
  if (!is_integer(value)) throw DomainError("expected an integer, got " + to_string(value));
  const BigInt& n = value.get_num();
  if (!n.fits_slong_p()) throw DomainError("integer out of range: " + to_string(value));
  return n.get_si();
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

std::optional<Rational> exact_root(const Rational& value, unsigned n) {
  if (n == 0) throw DomainError("zeroth root");
  if (sgn(value) < 0) {
    if (n % 2 == 0) return std::nullopt;
    auto r = exact_root(Rational(-value), n);
    if (!r) return std::nullopt;
    return Rational(-*r);
  }
  auto num = exact_root(value.get_num(), n);
  auto den = exact_root(value.get_den(), n);
  if (!num || !den) return std::nullopt;
  Rational r(*num, *den);
  r.canonicalize();
  return r;
}

}  // namespace qseries

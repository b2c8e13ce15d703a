#include "qseries/theta.hpp"

#include <cmath>
#include <map>

#include "qseries/errors.hpp"

namespace qseries {

namespace {

using Key = QSeries::Key;

Key to_units(const Rational& e, std::int64_t granularity) { return to_int64(e * granularity); }

}  // namespace

void ThetaArgs::validate() const {
  if (sgn(r.exponent + s.exponent) <= 0) {
    throw DomainError("theta arguments " + to_string(r) + ", " + to_string(s) +
                      " need exponent(r) + exponent(s) > 0");
  }
}

QSeries pochhammer_inf(const SignedMonomial& b, const Rational& step, std::int64_t order) {
  return pochhammer_inf(b, SignedMonomial::q_pow(step), order);
}

QSeries pochhammer_inf(const SignedMonomial& b, const SignedMonomial& base, std::int64_t order) {
  if (sgn(base.exponent) <= 0) throw DomainError("q-Pochhammer base must have positive exponent");
  if (sgn(b.exponent) < 0) throw DomainError("q-Pochhammer needs exponent(b) >= 0, got " + to_string(b));
  if (b.exponent == 0 && b.sign > 0) throw ZeroProductError("(1; q)_inf has the factor 1 - 1 = 0");

  const std::int64_t d = lcm64(granularity_of(b.exponent), granularity_of(base.exponent));
  const Key trunc = order * d;
  if (trunc <= 0) return QSeries(d, trunc);

  std::vector<BigInt> c(static_cast<std::size_t>(trunc));
  c[0] = 1;
  const Key b_units = to_units(b.exponent, d);
  const Key step_units = to_units(base.exponent, d);
  // factor k: 1 - b * base^k = 1 - sign * q^(b_units + k step_units)
  for (Key k = 0;; ++k) {
    const Key units = b_units + k * step_units;
    if (units >= trunc) break;
    const int sign = b.sign * ((base.sign < 0 && k % 2 == 1) ? -1 : 1);
    if (units == 0) {
      // 1 - (-1) = 2
      for (auto& x : c) x *= 2;
      continue;
    }
    for (Key key = trunc - 1; key >= units; --key) {
      if (c[key - units] == 0) continue;
      if (sign > 0) {
        c[key] -= c[key - units];
      } else {
        c[key] += c[key - units];
      }
    }
  }
  std::vector<QSeries::Term> terms;
  for (Key key = 0; key < trunc; ++key) {
    if (c[key] != 0) terms.push_back({key, Rational(c[key])});
  }
  return QSeries::from_terms(d, trunc, std::move(terms));
}

QSeries theta_product(const ThetaArgs& args, std::int64_t order) {
  args.validate();
  if (sgn(args.r.exponent) < 0 || sgn(args.s.exponent) < 0) {
    throw DomainError("product form of f(r, s) needs nonnegative exponents");
  }
  const SignedMonomial rs = args.r * args.s;
  return pochhammer_inf(-args.r, rs, order) * pochhammer_inf(-args.s, rs, order) * pochhammer_inf(rs, rs, order);
}

QSeries theta_sum(const ThetaArgs& args, std::int64_t order) {
  args.validate();
  const std::int64_t d = lcm64(granularity_of(args.r.exponent), granularity_of(args.s.exponent));
  const Key trunc = order * d;
  const Key er = to_units(args.r.exponent, d);
  const Key es = to_units(args.s.exponent, d);

  // key(n) = er n(n+1)/2 + es n(n-1)/2 = a n^2 + b n with a = (er+es)/2 > 0.
  const double a = 0.5 * static_cast<double>(er + es);
  const double b = 0.5 * static_cast<double>(er - es);
  const double disc = b * b + 4.0 * a * static_cast<double>(std::max<Key>(trunc, 0)) + 1.0;
  const Key lo = static_cast<Key>(std::floor((-b - std::sqrt(disc)) / (2.0 * a))) - 2;
  const Key hi = static_cast<Key>(std::ceil((-b + std::sqrt(disc)) / (2.0 * a))) + 2;

  std::map<Key, long long> acc;
  for (Key n = lo; n <= hi; ++n) {
    const Key t1 = n * (n + 1) / 2;
    const Key t2 = n * (n - 1) / 2;
    const Key key = er * t1 + es * t2;
    if (key >= trunc) continue;
    int sign = 1;
    if (args.r.sign < 0 && t1 % 2 != 0) sign = -sign;
    if (args.s.sign < 0 && t2 % 2 != 0) sign = -sign;
    acc[key] += sign;
  }
  std::vector<QSeries::Term> terms;
  for (const auto& [key, c] : acc) {
    if (c != 0) terms.push_back({key, Rational(static_cast<long>(c))});
  }
  return QSeries::from_terms(d, trunc, std::move(terms));
}

bool named_theta_from_string(std::string_view name, NamedTheta& out) {
  static constexpr std::pair<std::string_view, NamedTheta> kNames[] = {
      {"phi", NamedTheta::Phi},         {"psi", NamedTheta::Psi},         {"euler_f", NamedTheta::EulerF},
      {"chi_neg", NamedTheta::ChiNeg},  {"chi_pos", NamedTheta::ChiPos},  {"phineg", NamedTheta::PhiNeg},
      {"psineg", NamedTheta::PsiNeg},   {"f_plus", NamedTheta::FPlus},
  };
  for (const auto& [n, fn] : kNames) {
    if (n == name) {
      out = fn;
      return true;
    }
  }
  return false;
}

QSeries named(NamedTheta fn, const SignedMonomial& m, std::int64_t order) {
  if (sgn(m.exponent) <= 0) throw DomainError("named theta function needs an argument with positive exponent");
  switch (fn) {
    case NamedTheta::Phi:
      return theta_sum({m, m}, order);
    case NamedTheta::Psi:
      return theta_sum({m, pow(m, 3)}, order);
    case NamedTheta::PhiNeg:
      return theta_sum({-m, -m}, order);
    case NamedTheta::PsiNeg:
      return theta_sum({-m, pow(-m, 3)}, order);
    case NamedTheta::FPlus:
      return theta_sum({m, -pow(m, 2)}, order);
    case NamedTheta::EulerF:
      return pochhammer_inf(m, m, order);
    case NamedTheta::ChiNeg:
      return pochhammer_inf(m, pow(m, 2), order);
    case NamedTheta::ChiPos:
      return pochhammer_inf(-m, pow(m, 2), order);
  }
  throw DomainError("unknown named theta function");
}

QSeries gamma_omega(ThetaRatio which, std::int64_t order) {
  const auto q = [](int e, int sign = 1) { return SignedMonomial::q_pow(e, sign); };
  switch (which) {
    case ThetaRatio::Gamma1:
      return theta_sum({q(1), q(9)}, order) * invert(theta_sum({q(1, -1), q(9, -1)}, order));
    case ThetaRatio::Gamma2:
      return theta_sum({q(3), q(7)}, order) * invert(theta_sum({q(3, -1), q(7, -1)}, order));
    case ThetaRatio::Omega1:
      return theta_sum({q(4), q(6)}, order) * invert(theta_sum({q(1, -1), q(9, -1)}, order));
    case ThetaRatio::Omega2:
      return to_series(q(1), order) * theta_sum({q(2), q(8)}, order) *
             invert(theta_sum({q(3, -1), q(7, -1)}, order));
  }
  throw DomainError("unknown theta ratio");
}

}  // namespace qseries

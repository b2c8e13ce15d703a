#include "qseries/lambert.hpp"

#include <stdexcept>

#include "qseries/errors.hpp"

namespace qseries {

namespace {

using Key = QSeries::Key;

// Dense accumulator over keys [base, trunc).
class Accumulator {
 public:
  Accumulator(std::int64_t granularity, Key base, Key trunc)
      : granularity_(granularity), base_(std::min(base, trunc)), trunc_(trunc) {
    coeffs_.resize(static_cast<std::size_t>(std::max<Key>(trunc_ - base_, 0)));
  }

  void add(Key key, const Rational& c) {
    if (key >= trunc_) return;
    if (key < base_) throw std::logic_error("Lambert accumulator: key below precomputed lower bound");
    coeffs_[key - base_] += c;
  }

  // c * q^prefix / (1 - sign q^ratio)^p  =  c * sum_m C(m+p-1, p-1) sign^m q^(prefix + m ratio)
  void add_geometric(const Rational& c, Key prefix, int sign, Key ratio, int p) {
    if (ratio <= 0) throw std::logic_error("geometric expansion variable must have positive exponent");
    BigInt binom;
    for (Key m = 0;; ++m) {
      const Key key = prefix + m * ratio;
      if (key >= trunc_) break;
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(m + p - 1), static_cast<unsigned long>(p - 1));
      if (sign < 0 && m % 2 == 1) binom = -binom;
      add(key, c * Rational(binom));
    }
  }

  QSeries result() const { return QSeries::from_dense(granularity_, base_, coeffs_, trunc_); }

 private:
  std::int64_t granularity_;
  Key base_;
  Key trunc_;
  std::vector<Rational> coeffs_;
};

Key units(const Rational& e, std::int64_t d) { return to_int64(e * d); }

Rational power_of(const Rational& base, int k) {
  Rational out = 1;
  for (int i = 0; i < k; ++i) out *= base;
  return out;
}

// Block minima of a bilateral sum must be nondecreasing in |n| for the
// cutoff to be sound.
void check_monotone(Key& previous, Key current) {
  if (current < previous) throw std::logic_error("bilateral block minima are not monotone");
  previous = current;
}

}  // namespace

QSeries unilateral_lambert(const LambertSpec& spec, std::int64_t order) {
  if (sgn(spec.a) <= 0) throw DomainError("unilateral Lambert series needs a > 0");
  if (sgn(spec.c) < 0) throw DomainError("unilateral Lambert series needs c >= 0");
  if (spec.s != 1 && spec.s != -1) throw DomainError("Lambert denominator sign must be +1 or -1");
  if (spec.p < 1) throw DomainError("Lambert denominator power must be positive");
  if (spec.weight_power < 0) throw DomainError("Lambert weight power must be nonnegative");

  std::int64_t d = 1;
  for (const Rational* r : {&spec.a, &spec.b, &spec.c, &spec.d}) d = lcm64(d, granularity_of(*r));
  const Key trunc = order * d;
  Accumulator acc(d, units(spec.b, d), trunc);

  for (Key n = 0;; ++n) {
    const Key prefix = units(spec.a * n + spec.b, d);
    if (prefix >= trunc) break;
    const Rational weight = power_of(Rational(n) + spec.weight_offset, spec.weight_power);
    if (weight == 0) continue;
    const Rational den_exp = spec.c * n + spec.d;
    if (sgn(den_exp) < 0) throw DomainError("Lambert denominator exponent is negative at n = " + std::to_string(n));
    if (den_exp == 0) {
      if (spec.s == 1) throw PoleError("Lambert denominator 1 - q^0 vanishes at n = " + std::to_string(n));
      // 1 / (1 + 1)^p
      acc.add(prefix, weight / power_of(2, spec.p));
      continue;
    }
    acc.add_geometric(weight, prefix, spec.s, units(den_exp, d), spec.p);
  }
  return acc.result();
}

QSeries bilateral_lambert(const SignedMonomial& x, std::int64_t modulus, int power, std::int64_t order) {
  if (modulus < 1) throw DomainError("bilateral modulus must be positive");
  if (power < 1) throw DomainError("bilateral Lambert power must be positive");
  if (sgn(x.exponent) < 0 || x.exponent >= modulus) {
    throw DomainError("bilateral Lambert sum needs 0 <= exponent(x) < " + std::to_string(modulus));
  }
  if (x.exponent == 0 && x.sign > 0) throw PoleError("bilateral Lambert sum with x = 1 has a pole at n = 0");

  const std::int64_t d = granularity_of(x.exponent);
  const Key trunc = order * d;
  const Key ex = units(x.exponent, d);
  const Key step = modulus * d;
  Accumulator acc(d, 0, trunc);

  Key previous = 0;
  for (Key n = 0;; ++n) {
    const Key e = ex + step * n;
    if (e >= trunc) break;
    check_monotone(previous, e);
    if (e == 0) {
      // x = -1: -1 / 2^p
      acc.add(0, Rational(x.sign) / power_of(Rational(1 - x.sign), power));
      continue;
    }
    acc.add_geometric(x.sign, e, x.sign, e, power);
  }

  previous = 0;
  for (Key m = 1;; ++m) {
    const Key w = step * m - ex;  // exponent of w = x^-1 q^(Mm)
    const Key lowest = power == 1 ? w : (power - 1) * w;
    if (lowest >= trunc) break;
    check_monotone(previous, lowest);
    if (power == 1) {
      acc.add_geometric(-x.sign, w, x.sign, w, 1);
    } else {
      // (-1)^p w^(p-1) / (1-w)^p
      int c = (power % 2 == 0) ? 1 : -1;
      if (x.sign < 0 && (power - 1) % 2 == 1) c = -c;
      acc.add_geometric(c, (power - 1) * w, x.sign, w, power);
    }
  }
  return acc.result();
}

QSeries bilateral_ratio(const SignedMonomial& z, const SignedMonomial& a, std::int64_t modulus, std::int64_t order) {
  if (modulus < 1) throw DomainError("bilateral modulus must be positive");
  if (sgn(z.exponent) <= 0 || z.exponent >= modulus) {
    throw DivergenceError("bilateral ratio sum needs 0 < exponent(z) < " + std::to_string(modulus));
  }
  if (sgn(a.exponent) < 0 || a.exponent >= modulus) {
    throw DomainError("bilateral ratio sum needs 0 <= exponent(a) < " + std::to_string(modulus));
  }
  if (a.exponent == 0 && a.sign > 0) throw PoleError("bilateral ratio sum with a = 1 has a pole at n = 0");

  const std::int64_t d = lcm64(granularity_of(z.exponent), granularity_of(a.exponent));
  const Key trunc = order * d;
  const Key ez = units(z.exponent, d);
  const Key ea = units(a.exponent, d);
  const Key step = modulus * d;
  const Key base = std::min<Key>(0, step - ez - ea);
  Accumulator acc(d, base, trunc);

  Key previous = 0;
  for (Key n = 0;; ++n) {
    const Key prefix = ez * n;
    if (prefix >= trunc) break;
    check_monotone(previous, prefix);
    const int zsign = (z.sign < 0 && n % 2 == 1) ? -1 : 1;
    const Key ratio = ea + step * n;
    if (ratio == 0) {
      // 1 / (1 - (-1))
      acc.add(prefix, qseries::ratio(zsign, 2));
      continue;
    }
    acc.add_geometric(zsign, prefix, a.sign, ratio, 1);
  }

  previous = base;
  for (Key m = 1;; ++m) {
    const Key w = step * m - ea;
    const Key lowest = w - ez * m;
    if (lowest >= trunc) break;
    check_monotone(previous, lowest);
    // -z^-m * a^-1 q^w / (1 - a^-1 q^w)
    int c = -a.sign;
    if (z.sign < 0 && m % 2 == 1) c = -c;
    acc.add_geometric(c, lowest, a.sign, w, 1);
  }
  return acc.result();
}

QSeries eisenstein_L(std::int64_t n, std::int64_t order) {
  if (n < 1) throw DomainError("L(q^n) needs n >= 1");
  LambertSpec spec;
  spec.a = n;
  spec.b = n;
  spec.c = n;
  spec.d = n;
  spec.weight_offset = 1;
  spec.weight_power = 1;
  return QSeries::constant(1, order) - Rational(24) * unilateral_lambert(spec, order);
}

QSeries eisenstein_E(int weight, std::int64_t order) {
  if (weight < 2 || weight % 2 != 0) throw DomainError("Eisenstein series weight must be even and >= 2");
  LambertSpec spec;
  spec.b = 1;
  spec.weight_offset = 1;
  spec.weight_power = weight - 1;
  const Rational factor = Rational(2 * weight) / bernoulli(weight);
  return QSeries::constant(1, order) - factor * unilateral_lambert(spec, order);
}

Rational bernoulli(int k) {
  if (k < 0) throw DomainError("Bernoulli index must be nonnegative");
  // sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1
  std::vector<Rational> b(static_cast<std::size_t>(k) + 1);
  b[0] = 1;
  BigInt binom;
  for (int m = 1; m <= k; ++m) {
    Rational sum = 0;
    for (int j = 0; j < m; ++j) {
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(m + 1), static_cast<unsigned long>(j));
      sum += Rational(binom) * b[j];
    }
    b[m] = -sum / Rational(m + 1);
  }
  return b[k];
}

Comparison lambert_reorganize_check(std::int64_t order) {
  LambertSpec lhs;  // sum_{n>=0} q^(n+1) / (1 + q^(n+1))^2
  lhs.b = 1;
  lhs.s = -1;
  lhs.p = 2;
  LambertSpec first;  // sum_{n>=1} n q^n / (1 - q^n)
  first.b = 1;
  first.weight_offset = 1;
  first.weight_power = 1;
  LambertSpec second = first;  // sum_{n>=1} n q^(2n) / (1 - q^(2n))
  second.a = 2;
  second.b = 2;
  second.c = 2;
  second.d = 2;
  const QSeries rhs = unilateral_lambert(first, order) - Rational(4) * unilateral_lambert(second, order);
  return eq_to_order(unilateral_lambert(lhs, order), rhs, order);
}

}  // namespace qseries

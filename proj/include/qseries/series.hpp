#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qseries/rational.hpp"

namespace qseries {

/// Truncated formal Laurent series in u = q^(1/D) with exact rational
/// coefficients.
///
/// A term with integer key k stands for coeff * q^(k/D). The series is known
/// for every key strictly below `trunc_units()`; nothing is claimed at or
/// above it. Terms are kept sorted by key and never store a zero coefficient.
/// Values are immutable once built, so they can be shared across threads.
class QSeries {
 public:
  using Key = std::int64_t;

  struct Term {
    Key key;
    Rational coeff;
  };

  /// The zero series on the lattice (1/D)Z, known below key `trunc_units`.
  QSeries(std::int64_t granularity, Key trunc_units);

  /// Builds from unsorted terms; equal keys are summed, zeros and keys at or
  /// past the truncation are dropped.
  static QSeries from_terms(std::int64_t granularity, Key trunc_units, std::vector<Term> terms);

  /// coeffs[i] is the coefficient at key base + i.
  static QSeries from_dense(std::int64_t granularity, Key base, const std::vector<Rational>& coeffs,
                            Key trunc_units);

  /// c * q^e known to order `order` in q. Throws GranularityError when e*D is
  /// not an integer.
  static QSeries monomial(const Rational& c, const Rational& e, std::int64_t granularity, std::int64_t order);
  static QSeries constant(const Rational& c, std::int64_t order) { return monomial(c, 0, 1, order); }

  std::int64_t granularity() const { return granularity_; }
  Key trunc_units() const { return trunc_; }
  /// Truncation order in q.
  Rational truncation() const { return ratio(trunc_, granularity_); }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Smallest key with a nonzero coefficient; the truncation if the series
  /// is zero to its known order.
  Key valuation_units() const { return terms_.empty() ? trunc_ : terms_.front().key; }
  Rational valuation() const { return ratio(valuation_units(), granularity_); }

  /// Coefficient at q^e. Throws GranularityError if e is off the lattice and
  /// PrecisionError if e is not below the truncation.
  Rational coefficient(const Rational& e) const;

  /// Same series on a finer lattice; `granularity` must be a multiple of the
  /// current one.
  QSeries with_granularity(std::int64_t granularity) const;

  /// Coarsest lattice that still holds every stored exponent.
  QSeries reduced() const;

  bool has_integral_exponents() const;

  /// Drops everything at or beyond order `order` in q.
  QSeries truncated(const Rational& order) const;

  /// "1 + 2 q + 2 q^4"; "0" for the zero series.
  std::string to_string() const;

 private:
  std::int64_t granularity_ = 1;
  Key trunc_ = 0;
  std::vector<Term> terms_;
};

QSeries operator+(const QSeries& a, const QSeries& b);
QSeries operator-(const QSeries& a, const QSeries& b);
QSeries operator-(const QSeries& a);
QSeries operator*(const QSeries& a, const QSeries& b);
QSeries operator*(const Rational& c, const QSeries& a);

/// Multiplicative inverse. The result may carry negative exponents when the
/// input has positive valuation. Throws DivisionByZeroError if the input is
/// zero to its known order.
QSeries invert(const QSeries& a);

/// Integer power; negative exponents go through `invert`.
QSeries pow(const QSeries& a, std::int64_t k);

/// Series b with b^n = a and positive leading coefficient when the leading
/// coefficient of a is positive. The lattice is refined when the valuation
/// of a is not divisible by n.
QSeries nth_root(const QSeries& a, std::int64_t n);

/// q -> q^k for rational k > 0.
QSeries substitute(const QSeries& a, const Rational& k);

/// q -> -q. Only defined for series supported on integer exponents.
QSeries negate_q(const QSeries& a);

/// Brings both series onto the lcm lattice.
std::int64_t common_granularity(const QSeries& a, const QSeries& b);

struct Comparison {
  bool equal = true;
  /// Exponents strictly below this (in q) were compared.
  Rational order_checked;
  std::optional<Rational> first_difference;
  /// a - b at the first differing exponent.
  Rational difference;
};

/// Compares every exponent below min(order, truncation(a), truncation(b)).
Comparison eq_to_order(const QSeries& a, const QSeries& b, const Rational& order);

}  // namespace qseries

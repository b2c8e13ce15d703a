#include "qseries/series.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "qseries/errors.hpp"

namespace qseries {

namespace {

using Key = QSeries::Key;

Key floor_div(Key a, Key b) {
  Key q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Key ceil_div(Key a, Key b) { return -floor_div(-a, b); }

Key units_for(const Rational& exponent, std::int64_t granularity) {
  Rational scaled = exponent * granularity;
  if (!is_integer(scaled)) {
    throw GranularityError("exponent " + to_string(exponent) + " is not a multiple of 1/" +
                           std::to_string(granularity));
  }
  return to_int64(scaled);
}

// Lowest common denominator of a run of coefficients.
BigInt common_denominator(const std::vector<QSeries::Term>& terms) {
  BigInt den = 1;
  for (const auto& t : terms) {
    if (t.coeff.get_den() != 1) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  return den;
}

std::vector<BigInt> scaled_numerators(const std::vector<QSeries::Term>& terms, const BigInt& den) {
  std::vector<BigInt> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    BigInt n = t.coeff.get_num() * (den / t.coeff.get_den());
    out.push_back(std::move(n));
  }
  return out;
}

}  // namespace

QSeries::QSeries(std::int64_t granularity, Key trunc_units) : granularity_(granularity), trunc_(trunc_units) {
  if (granularity < 1) throw GranularityError("granularity must be positive");
}

QSeries QSeries::from_terms(std::int64_t granularity, Key trunc_units, std::vector<Term> terms) {
  QSeries out(granularity, trunc_units);
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.key < y.key; });
  for (auto& t : terms) {
    if (t.key >= trunc_units) break;
    if (!out.terms_.empty() && out.terms_.back().key == t.key) {
      out.terms_.back().coeff += t.coeff;
      if (out.terms_.back().coeff == 0) out.terms_.pop_back();
    } else if (t.coeff != 0) {
      out.terms_.push_back(std::move(t));
    }
  }
  return out;
}

QSeries QSeries::from_dense(std::int64_t granularity, Key base, const std::vector<Rational>& coeffs, Key trunc_units) {
  QSeries out(granularity, trunc_units);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const Key key = base + static_cast<Key>(i);
    if (key >= trunc_units) break;
    if (coeffs[i] != 0) out.terms_.push_back({key, coeffs[i]});
  }
  return out;
}

QSeries QSeries::monomial(const Rational& c, const Rational& e, std::int64_t granularity, std::int64_t order) {
  if (order < 0) throw DomainError("negative order");
  const Key key = units_for(e, granularity);
  const Key trunc = order * granularity;
  return from_terms(granularity, trunc, {{key, c}});
}

Rational QSeries::coefficient(const Rational& e) const {
  const Key key = units_for(e, granularity_);
  if (key >= trunc_) {
    throw PrecisionError("coefficient of q^" + qseries::to_string(e) + " requested beyond truncation order " +
                         qseries::to_string(truncation()));
  }
  auto it = std::lower_bound(terms_.begin(), terms_.end(), key, [](const Term& t, Key k) { return t.key < k; });
  if (it != terms_.end() && it->key == key) return it->coeff;
  return 0;
}

QSeries QSeries::with_granularity(std::int64_t granularity) const {
  if (granularity == granularity_) return *this;
  if (granularity < 1 || granularity % granularity_ != 0) {
    throw GranularityError("cannot move series from granularity " + std::to_string(granularity_) + " to " +
                           std::to_string(granularity));
  }
  const Key factor = granularity / granularity_;
  QSeries out(granularity, trunc_ * factor);
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) out.terms_.push_back({t.key * factor, t.coeff});
  return out;
}

QSeries QSeries::reduced() const {
  Key g = granularity_;
  for (const auto& t : terms_) {
    g = std::gcd(g, t.key);
    if (g == 1) break;
  }
  if (g == 1) return *this;
  QSeries out(granularity_ / g, ceil_div(trunc_, g));
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) out.terms_.push_back({t.key / g, t.coeff});
  return out;
}

bool QSeries::has_integral_exponents() const {
  return std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.key % granularity_ == 0; });
}

QSeries QSeries::truncated(const Rational& order) const {
  Rational scaled = order * granularity_;
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  if (!c.fits_slong_p()) return *this;
  const Key limit = std::min<Key>(trunc_, c.get_si());
  QSeries out(granularity_, limit);
  for (const auto& t : terms_) {
    if (t.key >= limit) break;
    out.terms_.push_back(t);
  }
  return out;
}

std::string QSeries::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    const bool negative = sgn(t.coeff) < 0;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const Rational magnitude = abs(t.coeff);
    const Rational exponent = ratio(t.key, granularity_);
    if (exponent == 0) {
      os << qseries::to_string(magnitude);
      continue;
    }
    if (magnitude != 1) os << qseries::to_string(magnitude) << " ";
    os << "q";
    if (exponent != 1) {
      if (is_integer(exponent)) {
        os << "^" << qseries::to_string(exponent);
      } else {
        os << "^(" << qseries::to_string(exponent) << ")";
      }
    }
  }
  return os.str();
}

std::int64_t common_granularity(const QSeries& a, const QSeries& b) {
  return lcm64(a.granularity(), b.granularity());
}

QSeries operator+(const QSeries& a_in, const QSeries& b_in) {
  const std::int64_t d = common_granularity(a_in, b_in);
  const QSeries a = a_in.with_granularity(d);
  const QSeries b = b_in.with_granularity(d);
  const Key trunc = std::min(a.trunc_units(), b.trunc_units());
  std::vector<QSeries::Term> merged;
  merged.reserve(a.terms().size() + b.terms().size());
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  while (ia != a.terms().end() || ib != b.terms().end()) {
    if (ib == b.terms().end() || (ia != a.terms().end() && ia->key < ib->key)) {
      if (ia->key < trunc) merged.push_back(*ia);
      ++ia;
    } else if (ia == a.terms().end() || ib->key < ia->key) {
      if (ib->key < trunc) merged.push_back(*ib);
      ++ib;
    } else {
      if (ia->key < trunc) merged.push_back({ia->key, ia->coeff + ib->coeff});
      ++ia;
      ++ib;
    }
  }
  return QSeries::from_terms(d, trunc, std::move(merged));
}

QSeries operator-(const QSeries& a) { return Rational(-1) * a; }

QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

QSeries operator*(const Rational& c, const QSeries& a) {
  std::vector<QSeries::Term> terms;
  if (c != 0) {
    terms.reserve(a.terms().size());
    for (const auto& t : a.terms()) terms.push_back({t.key, c * t.coeff});
  }
  return QSeries::from_terms(a.granularity(), a.trunc_units(), std::move(terms));
}

QSeries operator*(const QSeries& a_in, const QSeries& b_in) {
  const std::int64_t d = common_granularity(a_in, b_in);
  const QSeries a = a_in.with_granularity(d);
  const QSeries b = b_in.with_granularity(d);
  const Key va = a.valuation_units();
  const Key vb = b.valuation_units();
  const Key trunc = std::min(a.trunc_units() + vb, b.trunc_units() + va);
  if (a.is_zero() || b.is_zero() || trunc <= va + vb) return QSeries(d, trunc);

  // Integer convolution over a common denominator, one division at the end.
  const BigInt den_a = common_denominator(a.terms());
  const BigInt den_b = common_denominator(b.terms());
  const std::vector<BigInt> na = scaled_numerators(a.terms(), den_a);
  const std::vector<BigInt> nb = scaled_numerators(b.terms(), den_b);

  const Key base = va + vb;
  std::vector<BigInt> acc(static_cast<std::size_t>(trunc - base));
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (ta[i].key + vb >= trunc) break;
    for (std::size_t j = 0; j < tb.size(); ++j) {
      const Key k = ta[i].key + tb[j].key;
      if (k >= trunc) break;
      mpz_addmul(acc[k - base].get_mpz_t(), na[i].get_mpz_t(), nb[j].get_mpz_t());
    }
  }
  const BigInt den = den_a * den_b;
  std::vector<QSeries::Term> terms;
  for (std::size_t i = 0; i < acc.size(); ++i) {
    if (acc[i] == 0) continue;
    Rational c(acc[i], den);
    c.canonicalize();
    terms.push_back({base + static_cast<Key>(i), std::move(c)});
  }
  return QSeries::from_terms(d, trunc, std::move(terms));
}

QSeries invert(const QSeries& a) {
  if (a.is_zero()) {
    throw DivisionByZeroError("inverse of a series that vanishes below order " + to_string(a.truncation()));
  }
  const Key v = a.valuation_units();
  const Key rel = a.trunc_units() - v;

  // a = q^v * u / den with u integral; 1/a = den * q^-v / u.
  const BigInt den = common_denominator(a.terms());
  std::vector<BigInt> u(static_cast<std::size_t>(rel));
  std::vector<Key> support;
  for (const auto& t : a.terms()) {
    const Key k = t.key - v;
    u[k] = t.coeff.get_num() * (den / t.coeff.get_den());
    if (k > 0) support.push_back(k);
  }
  const BigInt& u0 = u[0];

  // 1/u has coefficients B_n / u0^(n+1) with B_n integral:
  // B_n = -sum_{k=1..n} u_k * B_{n-k} * u0^(k-1).
  std::vector<BigInt> u0_pow(static_cast<std::size_t>(rel) + 1);
  u0_pow[0] = 1;
  for (std::size_t i = 1; i < u0_pow.size(); ++i) u0_pow[i] = u0_pow[i - 1] * u0;
  std::vector<BigInt> big_b(static_cast<std::size_t>(rel));
  big_b[0] = 1;
  BigInt scratch;
  for (Key n = 1; n < rel; ++n) {
    BigInt& sum = big_b[n];
    for (Key k : support) {
      if (k > n) break;
      if (big_b[n - k] == 0) continue;
      mpz_mul(scratch.get_mpz_t(), u[k].get_mpz_t(), big_b[n - k].get_mpz_t());
      mpz_submul(sum.get_mpz_t(), scratch.get_mpz_t(), u0_pow[k - 1].get_mpz_t());
    }
  }

  std::vector<QSeries::Term> terms;
  for (Key n = 0; n < rel; ++n) {
    if (big_b[n] == 0) continue;
    Rational c(big_b[n] * den, u0_pow[n + 1]);
    c.canonicalize();
    terms.push_back({n - v, std::move(c)});
  }
  return QSeries::from_terms(a.granularity(), rel - v, std::move(terms));
}

QSeries pow(const QSeries& a, std::int64_t k) {
  if (k < 0) return invert(pow(a, -k));
  if (k == 0) {
    return QSeries::from_terms(a.granularity(), a.trunc_units() - a.valuation_units(), {{0, Rational(1)}});
  }
  std::optional<QSeries> result;
  QSeries base = a;
  while (true) {
    if (k & 1) result = result ? *result * base : base;
    k >>= 1;
    if (k == 0) break;
    base = base * base;
  }
  return *result;
}

QSeries nth_root(const QSeries& a_in, std::int64_t n) {
  if (n < 1) throw DomainError("root index must be positive");
  if (n == 1) return a_in;
  if (a_in.is_zero()) throw AlgebraicRootError("root of a series that vanishes to its known order");

  QSeries a = a_in;
  Key v = a.valuation_units();
  const Key residue = ((v % n) + n) % n;
  if (residue != 0) {
    const Key factor = n / std::gcd(residue, n);
    a = a.with_granularity(a.granularity() * factor);
    v = a.valuation_units();
  }
  const Rational& lead = a.terms().front().coeff;
  auto root = exact_root(lead, static_cast<unsigned>(n));
  if (!root) {
    if (sgn(lead) < 0 && n % 2 == 0) {
      throw DomainError("even root of negative leading coefficient " + to_string(lead));
    }
    throw AlgebraicRootError("leading coefficient " + to_string(lead) + " is not a perfect " + std::to_string(n) +
                             "-th power");
  }

  // g = h^(1/n) with h_0 = 1 (Miller's power recurrence):
  // g_k = 1/(k n) * sum_{j=1..k} ((n+1) j - k n) h_j g_{k-j}
  const Key rel = a.trunc_units() - v;
  std::vector<Rational> h(static_cast<std::size_t>(rel));
  std::vector<Key> support;
  for (const auto& t : a.terms()) {
    const Key j = t.key - v;
    h[j] = t.coeff / lead;
    if (j > 0) support.push_back(j);
  }
  std::vector<Rational> g(static_cast<std::size_t>(rel));
  g[0] = 1;
  Rational sum;
  for (Key k = 1; k < rel; ++k) {
    sum = 0;
    for (Key j : support) {
      if (j > k) break;
      if (g[k - j] == 0) continue;
      sum += Rational((n + 1) * j - k * n) * h[j] * g[k - j];
    }
    if (sum != 0) g[k] = sum / Rational(k * n);
  }

  const Key base = v / n;
  std::vector<QSeries::Term> terms;
  for (Key k = 0; k < rel; ++k) {
    if (g[k] != 0) terms.push_back({base + k, *root * g[k]});
  }
  return QSeries::from_terms(a.granularity(), base + rel, std::move(terms));
}

QSeries substitute(const QSeries& a, const Rational& k) {
  if (sgn(k) <= 0) throw DomainError("substitution q -> q^k needs k > 0, got " + to_string(k));
  const BigInt& num = k.get_num();
  const BigInt& den = k.get_den();
  if (!num.fits_slong_p() || !den.fits_slong_p()) throw DomainError("substitution factor too large");
  const Key p = num.get_si();
  const Key r = den.get_si();
  std::vector<QSeries::Term> terms;
  terms.reserve(a.terms().size());
  for (const auto& t : a.terms()) terms.push_back({t.key * p, t.coeff});
  return QSeries::from_terms(a.granularity() * r, a.trunc_units() * p, std::move(terms)).reduced();
}

QSeries negate_q(const QSeries& a) {
  std::vector<QSeries::Term> terms;
  terms.reserve(a.terms().size());
  for (const auto& t : a.terms()) {
    if (t.key % a.granularity() != 0) {
      throw DomainError("q -> -q is undefined for the fractional exponent " +
                        to_string(ratio(t.key, a.granularity())));
    }
    const Key e = t.key / a.granularity();
    terms.push_back({t.key, (e % 2 == 0) ? t.coeff : Rational(-t.coeff)});
  }
  return QSeries::from_terms(a.granularity(), a.trunc_units(), std::move(terms));
}

Comparison eq_to_order(const QSeries& a_in, const QSeries& b_in, const Rational& order) {
  const std::int64_t d = common_granularity(a_in, b_in);
  const QSeries a = a_in.with_granularity(d);
  const QSeries b = b_in.with_granularity(d);
  Key limit = std::min(a.trunc_units(), b.trunc_units());
  const Rational scaled = order * d;
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  if (c.fits_slong_p()) limit = std::min<Key>(limit, c.get_si());

  Comparison out;
  out.order_checked = ratio(limit, d);
  const QSeries diff = a - b;
  for (const auto& t : diff.terms()) {
    if (t.key >= limit) break;
    out.equal = false;
    out.first_difference = ratio(t.key, d);
    out.difference = t.coeff;
    break;
  }
  return out;
}

}  // namespace qseries

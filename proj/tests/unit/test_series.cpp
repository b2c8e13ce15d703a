#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qseries/errors.hpp"
#include "qseries/series.hpp"

using namespace qseries;

namespace {

QSeries poly(std::vector<long> coeffs, std::int64_t order) {
  std::vector<Rational> c;
  for (long v : coeffs) c.emplace_back(v);
  return QSeries::from_dense(1, 0, c, order);
}

}  // namespace

TEST_CASE("printing") {
  CHECK(poly({1, 2, 0, 0, 2}, 5).to_string() == "1 + 2 q + 2 q^4");
  CHECK(poly({0, -1, 0}, 3).to_string() == "-q");
  CHECK(QSeries(1, 4).to_string() == "0");
  CHECK(QSeries::monomial(Rational(-3, 2), Rational(1, 8), 8, 1).to_string() == "-3/2 q^(1/8)");
}

TEST_CASE("multiplication truncation follows valuations") {
  const QSeries a = QSeries::monomial(1, 2, 1, 10) + QSeries::monomial(1, 3, 1, 10);  // known < q^10
  const QSeries b = poly({1, 1}, 6);
  const QSeries p = a * b;
  CHECK(p.truncation() == 8);  // min(10 + 0, 6 + 2)
  CHECK(p.coefficient(4) == 1);
  CHECK(p.coefficient(3) == 2);
  CHECK_THROWS_AS(p.coefficient(8), PrecisionError);
}

TEST_CASE("geometric series inverse") {
  const QSeries inv = invert(poly({1, -1}, 20));
  for (int k = 0; k < 20; ++k) CHECK(inv.coefficient(k) == 1);
  const QSeries neg = invert(QSeries::monomial(2, 3, 1, 10) + QSeries::monomial(2, 4, 1, 10));
  CHECK(neg.valuation() == -3);
  CHECK(neg.truncation() == 4);  // relative precision 7 minus valuation 3
  CHECK(neg.coefficient(-3) == Rational(1, 2));
  CHECK(neg.coefficient(-2) == Rational(-1, 2));
  CHECK_THROWS_AS(invert(QSeries(1, 5)), DivisionByZeroError);
}

TEST_CASE("binomial powers and roots") {
  // (1+q)^5 coefficients by Pascal.
  const QSeries p = pow(poly({1, 1}, 12), 5);
  const long pascal[] = {1, 5, 10, 10, 5, 1};
  for (int k = 0; k < 6; ++k) CHECK(p.coefficient(k) == pascal[k]);
  CHECK(p.coefficient(6) == 0);
  // (1-q)^-2 = sum (n+1) q^n
  const QSeries m = pow(poly({1, -1}, 12), -2);
  for (int k = 0; k < 12; ++k) CHECK(m.coefficient(k) == k + 1);
  CHECK(pow(poly({3, 1}, 7), 0).coefficient(0) == 1);

  const QSeries r = nth_root(p, 5);
  CHECK(eq_to_order(r, poly({1, 1}, 12), 12).equal);
  // sqrt(1 + 4q) has coefficients C(2k,k)(-1)^(k+1)/(2k-1)
  const QSeries s = nth_root(poly({1, 4}, 6), 2);
  CHECK(s.coefficient(1) == 2);
  CHECK(s.coefficient(2) == -2);
  CHECK(s.coefficient(3) == 4);
  CHECK(s.coefficient(4) == -10);
  CHECK_THROWS_AS(nth_root(poly({2, 1}, 5), 2), AlgebraicRootError);
  CHECK_THROWS_AS(nth_root(poly({-4, 1}, 5), 2), DomainError);
  CHECK(nth_root(poly({-8, 0, 1}, 5), 3).coefficient(0) == -2);
}

TEST_CASE("fractional valuation under roots refines the lattice") {
  const QSeries a = QSeries::monomial(256, 1, 1, 9) + QSeries::monomial(256, 2, 1, 9);
  const QSeries r = nth_root(a, 8);
  CHECK(r.granularity() % 8 == 0);
  CHECK(r.valuation() == Rational(1, 8));
  CHECK(r.coefficient(Rational(1, 8)) == 2);
  CHECK(r.coefficient(Rational(9, 8)) == Rational(1, 4));
  CHECK_THROWS_AS(r.coefficient(Rational(1, 16)), GranularityError);
}

TEST_CASE("substitution and q -> -q") {
  const QSeries a = poly({1, 2, 3}, 3);
  const QSeries b = substitute(a, 2);
  CHECK(b.truncation() == 6);
  CHECK(b.coefficient(2) == 2);
  CHECK(b.coefficient(3) == 0);
  const QSeries c = substitute(a, Rational(1, 2));
  CHECK(c.coefficient(Rational(1, 2)) == 2);
  CHECK(c.truncation() == Rational(3, 2));
  const QSeries d = negate_q(a);
  CHECK(d.coefficient(1) == -2);
  CHECK(d.coefficient(2) == 3);
  CHECK_THROWS_AS(negate_q(c), DomainError);
}

TEST_CASE("mixed lattices add on the lcm lattice") {
  const QSeries a = QSeries::monomial(1, Rational(1, 2), 2, 3);
  const QSeries b = QSeries::monomial(1, Rational(1, 3), 3, 3);
  const QSeries s = a + b;
  CHECK(s.granularity() == 6);
  CHECK(s.coefficient(Rational(1, 2)) == 1);
  CHECK(s.coefficient(Rational(1, 3)) == 1);
}

TEST_CASE("comparison reports the first difference") {
  const QSeries a = poly({1, 2, 3, 4}, 4);
  const QSeries b = poly({1, 2, 5, 4}, 4);
  const Comparison c = eq_to_order(a, b, 10);
  CHECK_FALSE(c.equal);
  CHECK(c.order_checked == 4);
  REQUIRE(c.first_difference);
  CHECK(*c.first_difference == 2);
  CHECK(c.difference == -2);
  CHECK(eq_to_order(a, b, 2).equal);
}

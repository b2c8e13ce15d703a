#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "qseries/errors.hpp"
#include "qseries/theta.hpp"

using namespace qseries;

namespace {

constexpr int kOrder = 60;

// Coefficients of sum_{n in Z} sign^n q^(a n^2 + b n) by direct enumeration.
std::map<long, long> quadratic_sum(long a, long b, int sign, long order) {
  std::map<long, long> out;
  for (long n = -200; n <= 200; ++n) {
    const long e = a * n * n + b * n;
    if (e < order) out[e] += (sign < 0 && (n % 2 != 0)) ? -1 : 1;
  }
  return out;
}

void check_against(const QSeries& s, const std::map<long, long>& oracle, long order) {
  for (long k = 0; k < order; ++k) {
    const auto it = oracle.find(k);
    CHECK_MESSAGE(s.coefficient(k) == (it == oracle.end() ? 0 : it->second), "exponent " << k);
  }
}

SignedMonomial qm(long e, int sign = 1) { return SignedMonomial::q_pow(e, sign); }

}  // namespace

TEST_CASE("phi, psi, Euler function against enumeration") {
  check_against(named(NamedTheta::Phi, 1, kOrder), quadratic_sum(1, 0, 1, kOrder), kOrder);
  check_against(named(NamedTheta::PhiNeg, 1, kOrder), quadratic_sum(1, 0, -1, kOrder), kOrder);
  // psi(q) = sum_{n>=0} q^(n(n+1)/2) = (1/2) sum_{n in Z} q^(n(n+1)/2)... use 2n^2 + n over Z
  check_against(named(NamedTheta::Psi, 1, kOrder), quadratic_sum(2, 1, 1, kOrder), kOrder);
  // pentagonal number theorem: (q;q)_inf = sum (-1)^n q^(n(3n-1)/2)
  std::map<long, long> pent;
  for (long n = -50; n <= 50; ++n) {
    const long e = n * (3 * n - 1) / 2;
    if (e < kOrder) pent[e] += (n % 2 != 0) ? -1 : 1;
  }
  check_against(named(NamedTheta::EulerF, 1, kOrder), pent, kOrder);
}

TEST_CASE("chi(-q) to q^5") {
  const QSeries c = named(NamedTheta::ChiNeg, 1, 6);
  const long expected[] = {1, -1, 0, -1, 1, -1};
  for (int k = 0; k < 6; ++k) CHECK(c.coefficient(k) == expected[k]);
}

TEST_CASE("product and sum forms agree") {
  const std::vector<std::pair<SignedMonomial, SignedMonomial>> cases = {
      {qm(1), qm(1)}, {qm(1), qm(3)}, {qm(1, -1), qm(2, -1)}, {qm(2), qm(3)}, {qm(0), qm(4, -1)},
      {qm(1), qm(9)}, {qm(3, -1), qm(7, -1)}, {qm(0), qm(5)}};
  for (const auto& [r, s] : cases) {
    const ThetaArgs args{r, s};
    CHECK(eq_to_order(theta_product(args, 50), theta_sum(args, 50), 50).equal);
  }
}

TEST_CASE("fractional exponents") {
  const ThetaArgs args{SignedMonomial::q_pow(Rational(1, 2)), SignedMonomial::q_pow(Rational(3, 2))};
  CHECK(eq_to_order(theta_product(args, 20), theta_sum(args, 20), 20).equal);
  CHECK(eq_to_order(theta_sum(args, 20), named(NamedTheta::Psi, Rational(1, 2), 20), 20).equal);
}

TEST_CASE("negative exponent in one argument") {
  // f(q^-1, q^3) = q^-1 f(q, q) by the shift n -> n + 1
  const QSeries s = theta_sum({qm(-1), qm(3)}, 20);
  CHECK(s.valuation() == -1);
  const QSeries shifted = QSeries::monomial(1, -1, 1, 20) * named(NamedTheta::Phi, 1, 21);
  CHECK(eq_to_order(s, shifted, 20).equal);
  CHECK_THROWS_AS(theta_sum({qm(-2), qm(1)}, 10), DomainError);
  CHECK_THROWS_AS(theta_product({qm(-1), qm(3)}, 10), DomainError);
}

TEST_CASE("degenerate Pochhammer") {
  CHECK_THROWS_AS(pochhammer_inf(qm(0), 1, 10), ZeroProductError);
  CHECK(pochhammer_inf(qm(0, -1), 1, 10).coefficient(0) == 2);
  // f(-1, q) = 0: the product form has the factor (1; q) and refuses it
  CHECK_THROWS_AS(theta_product({qm(0, -1), qm(1)}, 10), ZeroProductError);
  CHECK(theta_sum({qm(0, -1), qm(1)}, 10).is_zero());
}

TEST_CASE("Jacobi triple product on several pairs") {
  for (long a = 1; a <= 4; ++a) {
    for (long b = a; b <= 6; ++b) {
      const ThetaArgs args{qm(a, -1), qm(b, -1)};
      CHECK(eq_to_order(theta_product(args, 40), theta_sum(args, 40), 40).equal);
    }
  }
}

TEST_CASE("theta ratios have unit constant term") {
  for (ThetaRatio r : {ThetaRatio::Gamma1, ThetaRatio::Gamma2, ThetaRatio::Omega1}) {
    CHECK(gamma_omega(r, 10).coefficient(0) == 1);
  }
  CHECK(gamma_omega(ThetaRatio::Omega2, 10).coefficient(0) == 0);
  CHECK(gamma_omega(ThetaRatio::Omega2, 10).coefficient(1) == 1);
}

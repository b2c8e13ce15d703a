#pragma once

#include <cstdint>

#include "qseries/monomial.hpp"
#include "qseries/series.hpp"

namespace qseries {

/// Summand shape of a unilateral Lambert-type series
///
///   sum_{n>=0} (n + weight_offset)^weight_power * q^(a n + b) / (1 - s q^(c n + d))^p
///
/// The weight factor defaults to 1, which covers the plain sums; it is needed
/// for the divisor-weighted sums behind the Eisenstein series.
struct LambertSpec {
  Rational a = 1;
  Rational b = 0;
  int s = 1;
  Rational c = 1;
  Rational d = 1;
  int p = 1;
  Rational weight_offset = 0;
  int weight_power = 0;
};

QSeries unilateral_lambert(const LambertSpec& spec, std::int64_t order);

/// sum_{n in Z} x q^(Mn) / (1 - x q^(Mn))^p with 0 <= exponent(x) < M.
///
/// Terms with n = -m < 0 are rewritten with w = x^-1 q^(Mm), which has a
/// positive exponent:
///
///   x q^(-Mm) / (1 - x q^(-Mm))^p = (-1)^p w^(p-1) / (1 - w)^p.
///
/// For p = 1 every such term is -1 - w/(1-w) and the plain sum diverges; the
/// p = 1 series is the regularized one in which each negative-index term is
/// shifted by +1, i.e. contributes -w/(1-w).
QSeries bilateral_lambert(const SignedMonomial& x, std::int64_t modulus, int power, std::int64_t order);

/// sum_{n in Z} z^n / (1 - a q^(Mn)) with 0 < exponent(z) < M and
/// 0 <= exponent(a) < M. Negative-index terms are expanded as
/// -z^-m sum_{j>=1} (a^-1 q^(Mm))^j.
QSeries bilateral_ratio(const SignedMonomial& z, const SignedMonomial& a, std::int64_t modulus, std::int64_t order);

/// L(q^n) = 1 - 24 sum_{m>=1} m q^(nm) / (1 - q^(nm)).
QSeries eisenstein_L(std::int64_t n, std::int64_t order);

/// Normalized Eisenstein series of even weight k:
/// E_k = 1 - (2k / B_k) sum_{n>=1} n^(k-1) q^n / (1 - q^n). E_2 = L, E_4 = M, E_6 = N.
QSeries eisenstein_E(int weight, std::int64_t order);

/// Bernoulli numbers from x/(e^x - 1) = sum B_k x^k / k!, so B_1 = -1/2.
Rational bernoulli(int k);

/// Checks sum_{n>=1} q^n/(1+q^n)^2 = sum n q^n/(1-q^n) - 4 sum n q^(2n)/(1-q^(2n)).
Comparison lambert_reorganize_check(std::int64_t order);

}  // namespace qseries

#pragma once

#include <cstdint>
#include <string_view>

#include "qseries/monomial.hpp"
#include "qseries/series.hpp"

namespace qseries {

/// Arguments of Ramanujan's general theta function f(r, s). The series
/// converges formally when exponent(r) + exponent(s) > 0.
struct ThetaArgs {
  SignedMonomial r;
  SignedMonomial s;

  /// Throws DomainError when exponent(r) + exponent(s) <= 0.
  void validate() const;
};

/// (b; q^step)_inf = prod_{k>=0} (1 - b q^(step k)) to order `order`.
/// Needs exponent(b) > 0, or b = -1 (first factor 2); b = +1 throws
/// ZeroProductError.
QSeries pochhammer_inf(const SignedMonomial& b, const Rational& step, std::int64_t order);

/// (b; base)_inf for a signed base +-q^e, e > 0.
QSeries pochhammer_inf(const SignedMonomial& b, const SignedMonomial& base, std::int64_t order);

/// f(r, s) = (-r; rs)_inf (-s; rs)_inf (rs; rs)_inf. Both exponents must be
/// nonnegative.
QSeries theta_product(const ThetaArgs& args, std::int64_t order);

/// f(r, s) = sum_{n in Z} r^(n(n+1)/2) s^(n(n-1)/2), summed directly. One of
/// the exponents may be negative as long as their sum is positive; the result
/// then has negative valuation.
QSeries theta_sum(const ThetaArgs& args, std::int64_t order);

enum class NamedTheta {
  Phi,     // phi(m)    = f(m, m)
  Psi,     // psi(m)    = f(m, m^3)
  EulerF,  // f(-m)     = (m; m)_inf
  ChiNeg,  // chi(-m)   = (m; m^2)_inf
  ChiPos,  // chi(m)    = (-m; m^2)_inf
  PhiNeg,  // phi(-m)
  PsiNeg,  // psi(-m)
  FPlus,   // f(m)      = f(m, -m^2)
};

/// Parses the DSL spelling ("phi", "psineg", "euler_f", ...).
bool named_theta_from_string(std::string_view name, NamedTheta& out);

/// Named function at argument m (exponent(m) > 0).
QSeries named(NamedTheta fn, const SignedMonomial& m, std::int64_t order);

/// Named function at argument q^k.
inline QSeries named(NamedTheta fn, const Rational& k, std::int64_t order) {
  return named(fn, SignedMonomial::q_pow(k), order);
}

enum class ThetaRatio { Gamma1, Gamma2, Omega1, Omega2 };

/// Gamma1 = f(q,q^9)/f(-q,-q^9), Gamma2 = f(q^3,q^7)/f(-q^3,-q^7),
/// Omega1 = f(q^4,q^6)/f(-q,-q^9), Omega2 = q f(q^2,q^8)/f(-q^3,-q^7).
QSeries gamma_omega(ThetaRatio which, std::int64_t order);

}  // namespace qseries

#pragma once

#include <cstdint>
#include <span>

#include "qseries/series.hpp"

namespace qseries {

// Classical theta parametrization of the degree-5 modular equation:
//   alpha = 16 q psi^4(q^2) / phi^4(q),  1 - alpha = phi^4(-q) / phi^4(q),
//   beta  = alpha(q^5),                  m = phi^2(q) / phi^2(q^5).
QSeries alpha_series(std::int64_t order);
QSeries beta_series(std::int64_t order);
QSeries multiplier_series(std::int64_t order);

enum class ModularVariant {
  // m^2 + 1 - 2m + 8((1-b)^5/(1-a))^(1/8) - 8(1-a)^(1/2)(1-b)^(1/2)
  //   = m^2 a + b - 2 m^2 (ab)^(1/2) + 8(a b^3 (1-b)^5/(1-a))^(1/8)
  AsPrinted,
  // m^2 + 1 - 2m + 8((1-b)^5/(1-a))^(1/8) - 8(1-b)
  //   = m^2 a + b - 2 m (ab)^(1/2) + 8(a b^3 (1-b)^5/(1-a))^(1/8)
  AsDerived,
};

struct ModularResidual {
  QSeries residual{1, 0};
  /// Residual supported on integer exponents although built at granularity D.
  bool integral = false;
  /// Every radical term lives on the (1/D)Z lattice.
  bool radicals_on_lattice = false;
  /// ((alpha beta^3 (1-beta)^5/(1-alpha))^(1/8), for the leading-term check.
  QSeries eighth_root_term{1, 0};
  Rational order_checked;
};

/// LHS - RHS of the degree-5 equation to order `order`, computed at granularity
/// `granularity`. Root preconditions are asserted; a violation throws
/// std::logic_error because it means the parametrization is wrong, not the
/// identity.
ModularResidual modular_eq_residual(std::int64_t order, ModularVariant variant, std::int64_t granularity = 8);

// Floating-point side.

double agm(double a, double b, double tol = 1e-16);

/// 2F1(1/2, 1/2; 1; x) = 1 / agm(1, sqrt(1 - x)) for 0 <= x < 1.
double hyp2f1_half(double x, double tol = 1e-16);

/// Direct summation of (p+1)F(p) with the given upper and lower parameters
/// at |z| < 1, stopping once a term falls below tol times the partial sum.
double hypergeometric_series(std::span<const double> upper, std::span<const double> lower, double z,
                             double tol = 1e-17);

double phi_numeric(double q, double tol = 1e-18);
double psi_numeric(double q, double tol = 1e-18);

/// Evaluates the stored coefficients at real q in (0, 1) by Horner's rule in q^(1/D).
double evaluate_numeric(const QSeries& s, double q);

struct NumericSample {
  double q = 0;
  double alpha = 0;
  double beta = 0;
  /// phi^2(q)/phi^2(q^5) from direct theta sums.
  double m_theta = 0;
  /// F(alpha)/F(beta).
  double m_hypergeometric = 0;
  /// multiplier_series evaluated at q.
  double m_series = 0;
  /// [F(1-beta)/F(beta)] / [F(1-alpha)/F(alpha)]; 5 for degree 5.
  double ratio = 0;
  /// Largest |AGM - direct series| over the F arguments that are <= 1/2.
  double hypergeometric_crosscheck = 0;
  double tol = 0;

  bool ratio_ok() const;
  bool multiplier_ok() const;
  bool ok() const { return ratio_ok() && multiplier_ok() && hypergeometric_crosscheck <= 1e-12; }
};

/// Needs 0 < q <= 0.2.
NumericSample degree_check(double q, double tol = 1e-8);

}  // namespace qseries

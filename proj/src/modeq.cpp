#include "qseries/modeq.hpp"

#include <cmath>
#include <stdexcept>

#include "qseries/errors.hpp"
#include "qseries/theta.hpp"

namespace qseries {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

QSeries one(std::int64_t order) { return QSeries::constant(1, order); }

QSeries checked_root(const QSeries& radicand, std::int64_t n, const char* what) {
  try {
    return nth_root(radicand, n);
  } catch (const Error& e) {
    throw std::logic_error(std::string("structural failure in ") + what + ": " + e.what());
  }
}

bool on_lattice(const QSeries& s, std::int64_t granularity) {
  return granularity % s.reduced().granularity() == 0;
}

ModularResidual residual_at(std::int64_t work, ModularVariant variant, std::int64_t granularity) {
  const QSeries a = alpha_series(work).with_granularity(granularity);
  const QSeries b = beta_series(work).with_granularity(granularity);
  const QSeries m = multiplier_series(work).with_granularity(granularity);
  const QSeries c1 = one(work) - a;
  const QSeries c5 = one(work) - b;
  const QSeries c5_fifth = pow(c5, 5);

  const QSeries r1 = checked_root(c5_fifth * invert(c1), 8, "((1-beta)^5/(1-alpha))^(1/8)");
  const QSeries r2 = checked_root(a * pow(b, 3) * c5_fifth * invert(c1), 8,
                                  "(alpha beta^3 (1-beta)^5/(1-alpha))^(1/8)");
  const QSeries r3 = checked_root(a * b, 2, "(alpha beta)^(1/2)");

  const QSeries m2 = m * m;
  QSeries lhs = m2 + one(work) - Rational(2) * m + Rational(8) * r1;
  QSeries rhs = m2 * a + b + Rational(8) * r2;
  bool lattice = on_lattice(r1, granularity) && on_lattice(r2, granularity) && on_lattice(r3, granularity);
  if (variant == ModularVariant::AsPrinted) {
    const QSeries r4 = checked_root(c1 * c5, 2, "(1-alpha)^(1/2)(1-beta)^(1/2)");
    lattice = lattice && on_lattice(r4, granularity);
    lhs = lhs - Rational(8) * r4;
    rhs = rhs - Rational(2) * m2 * r3;
  } else {
    lhs = lhs - Rational(8) * c5;
    rhs = rhs - Rational(2) * m * r3;
  }

  ModularResidual out;
  out.residual = lhs - rhs;
  out.integral = out.residual.has_integral_exponents();
  out.radicals_on_lattice = lattice;
  out.eighth_root_term = r2;
  return out;
}

}  // namespace

QSeries alpha_series(std::int64_t order) {
  const QSeries phi = named(NamedTheta::Phi, 1, order);
  const QSeries psi2 = named(NamedTheta::Psi, 2, order);
  return Rational(16) * QSeries::monomial(1, 1, 1, order + 1) * pow(psi2, 4) * invert(pow(phi, 4));
}

QSeries beta_series(std::int64_t order) { return substitute(alpha_series(ceil_div(order, 5)), 5); }

QSeries multiplier_series(std::int64_t order) {
  const QSeries phi = named(NamedTheta::Phi, 1, order);
  const QSeries phi5 = named(NamedTheta::Phi, 5, order);
  return phi * phi * invert(phi5 * phi5);
}

ModularResidual modular_eq_residual(std::int64_t order, ModularVariant variant, std::int64_t granularity) {
  if (order < 1) throw DomainError("order must be positive");
  if (granularity < 1) throw DomainError("granularity must be positive");
  std::int64_t work = order;
  for (int attempt = 0; attempt < 8; ++attempt) {
    ModularResidual r = residual_at(work, variant, granularity);
    if (r.residual.truncation() >= order) {
      r.order_checked = order;
      r.residual = r.residual.truncated(order);
      return r;
    }
    work += to_int64(Rational(order) - r.residual.truncation()) + 2;
  }
  throw PrecisionError("could not reach the requested order for the modular residual");
}

double agm(double a, double b, double tol) {
  if (!(a > 0) || !(b > 0)) throw DomainError("agm needs positive arguments");
  for (int i = 0; i < 100; ++i) {
    const double m = 0.5 * (a + b);
    const double g = std::sqrt(a * b);
    a = m;
    b = g;
    if (std::abs(a - b) <= tol * a) break;
  }
  return 0.5 * (a + b);
}

double hyp2f1_half(double x, double tol) {
  if (!(x >= 0) || x >= 1) throw DomainError("2F1(1/2,1/2;1;x) needs 0 <= x < 1");
  return 1.0 / agm(1.0, std::sqrt(1.0 - x), tol);
}

double hypergeometric_series(std::span<const double> upper, std::span<const double> lower, double z, double tol) {
  if (!(std::abs(z) < 1)) throw DomainError("hypergeometric series needs |z| < 1");
  double term = 1;
  double sum = 1;
  for (int n = 0; n < 100000; ++n) {
    for (double u : upper) term *= u + n;
    for (double l : lower) term /= l + n;
    term *= z / (n + 1);
    sum += term;
    if (std::abs(term) <= tol * std::abs(sum)) return sum;
  }
  throw DomainError("hypergeometric series did not converge");
}

double phi_numeric(double q, double tol) {
  if (!(q > 0) || q >= 1) throw DomainError("numeric theta needs 0 < q < 1");
  double sum = 1;
  for (int n = 1;; ++n) {
    const double t = 2 * std::pow(q, static_cast<double>(n) * n);
    sum += t;
    if (t <= tol * sum) return sum;
  }
}

double psi_numeric(double q, double tol) {
  if (!(q > 0) || q >= 1) throw DomainError("numeric theta needs 0 < q < 1");
  double sum = 1;
  for (int n = 1;; ++n) {
    const double t = std::pow(q, static_cast<double>(n) * (n + 1) / 2);
    sum += t;
    if (t <= tol * sum) return sum;
  }
}

double evaluate_numeric(const QSeries& s, double q) {
  if (s.is_zero()) return 0;
  const double x = std::pow(q, 1.0 / static_cast<double>(s.granularity()));
  const auto& terms = s.terms();
  const QSeries::Key low = terms.front().key;
  double acc = 0;
  QSeries::Key k = terms.back().key;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    acc *= std::pow(x, static_cast<double>(k - it->key));
    acc += it->coeff.get_d();
    k = it->key;
  }
  return acc * std::pow(x, static_cast<double>(low));
}

bool NumericSample::ratio_ok() const { return std::abs(ratio - 5) <= tol; }

bool NumericSample::multiplier_ok() const {
  return std::abs(m_theta - m_hypergeometric) <= tol && std::abs(m_series - m_theta) <= 1e-10;
}

NumericSample degree_check(double q, double tol) {
  if (!(q > 0) || q > 0.2) throw DomainError("degree check needs 0 < q <= 0.2");
  const auto alpha_at = [](double t) {
    const double p = phi_numeric(t);
    const double s = psi_numeric(t * t);
    return 16 * t * std::pow(s, 4) / std::pow(p, 4);
  };
  NumericSample out;
  out.q = q;
  out.tol = tol;
  out.alpha = alpha_at(q);
  out.beta = alpha_at(std::pow(q, 5));
  if (!(out.alpha > 0 && out.alpha < 1 && out.beta > 0 && out.beta < out.alpha)) {
    throw DomainError("alpha/beta out of range at q = " + std::to_string(q));
  }
  const double fa = hyp2f1_half(out.alpha);
  const double fa1 = hyp2f1_half(1 - out.alpha);
  const double fb = hyp2f1_half(out.beta);
  const double fb1 = hyp2f1_half(1 - out.beta);
  out.ratio = (fb1 / fb) / (fa1 / fa);
  out.m_theta = std::pow(phi_numeric(q) / phi_numeric(std::pow(q, 5)), 2);
  out.m_hypergeometric = fa / fb;
  out.m_series = evaluate_numeric(multiplier_series(60), q);

  const double half[] = {0.5, 0.5};
  const double unit[] = {1.0};
  for (double x : {out.alpha, 1 - out.alpha, out.beta, 1 - out.beta}) {
    if (x > 0.5) continue;
    const double direct = hypergeometric_series(half, unit, x);
    out.hypergeometric_crosscheck = std::max(out.hypergeometric_crosscheck, std::abs(direct - hyp2f1_half(x)));
  }
  return out;
}

}  // namespace qseries

#include "qseries/evaluator.hpp"

#include <unordered_map>

#include "qseries/lambert.hpp"
#include "qseries/modeq.hpp"
#include "qseries/theta.hpp"

namespace qseries::dsl {

EvalError::EvalError(std::string kind, const std::string& message, std::string path)
    : Error(message + " [at " + path + "]"), kind_(std::move(kind)), path_(std::move(path)) {}

namespace {

std::int64_t ceil_div(const Rational& a, const Rational& b) {
  const Rational r = a / b;
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return to_int64(Rational(q));
}

// Literal arguments such as Lambert shape parameters: a rational, possibly negated.
Rational literal(const Expr& e, const char* what) {
  if (e.kind == Kind::Number) return e.value;
  if (e.kind == Kind::Neg) return -literal(*e.args[0], what);
  throw DomainError(std::string(what) + " must be a rational literal, got " + print(e));
}

std::int64_t integer_literal(const Expr& e, const char* what) {
  const Rational v = literal(e, what);
  if (!is_integer(v)) throw DomainError(std::string(what) + " must be an integer, got " + print(e));
  return to_int64(v);
}

int sign_literal(const Expr& e) {
  const std::int64_t s = integer_literal(e, "Lambert denominator sign");
  if (s != 1 && s != -1) throw DomainError("Lambert denominator sign must be 1 or -1");
  return static_cast<int>(s);
}

const char* child_label(Kind k, std::size_t i) {
  switch (k) {
    case Kind::Add: return i == 0 ? "add.lhs" : "add.rhs";
    case Kind::Sub: return i == 0 ? "sub.lhs" : "sub.rhs";
    case Kind::Mul: return i == 0 ? "mul.lhs" : "mul.rhs";
    case Kind::Div: return i == 0 ? "div.num" : "div.den";
    case Kind::Neg: return "neg";
    case Kind::Pow: return "pow";
    case Kind::Root: return "root";
    case Kind::Subq: return "subq";
    default: return "arg";
  }
}

class Evaluator {
 public:
  explicit Evaluator(const Bindings& bindings) : bindings_(bindings) {}

  QSeries eval(const Expr& e, std::int64_t order, const std::string& path) {
    try {
      return eval_node(e, order, path);
    } catch (const EvalError&) {
      throw;
    } catch (const Error& err) {
      throw EvalError(err.kind(), err.what(), path);
    } catch (const std::logic_error& err) {
      throw EvalError("internal", err.what(), path);
    }
  }

 private:
  std::string sub_path(const std::string& path, const std::string& label) const {
    return path.empty() ? label : path + " > " + label;
  }

  QSeries child(const Expr& e, std::size_t i, std::int64_t order, const std::string& path) {
    return eval(*e.args[i], order, sub_path(path, child_label(e.kind, i)));
  }

  QSeries eval_node(const Expr& e, std::int64_t order, const std::string& path) {
    switch (e.kind) {
      case Kind::Number:
        return QSeries::constant(e.value, order);
      case Kind::Monomial:
        return to_series(SignedMonomial::q_pow(e.value), order);
      case Kind::Param:
        return to_series(evaluate_monomial(e, bindings_), order);
      case Kind::Add:
        return child(e, 0, order, path) + child(e, 1, order, path);
      case Kind::Sub:
        return child(e, 0, order, path) - child(e, 1, order, path);
      case Kind::Mul:
        return child(e, 0, order, path) * child(e, 1, order, path);
      case Kind::Div: {
        const QSeries num = child(e, 0, order, path);
        return num * invert(child(e, 1, order, path));
      }
      case Kind::Neg:
        return -child(e, 0, order, path);
      case Kind::Pow:
        return pow(child(e, 0, order, path), e.index);
      case Kind::Root:
        return nth_root(child(e, 0, order, path), e.index);
      case Kind::Subq:
        return substitute(child(e, 0, ceil_div(order, e.value), path), e.value);
      case Kind::Call:
        return call_cached(e, order, sub_path(path, "call " + e.name));
    }
    throw std::logic_error("unhandled node kind");
  }

  QSeries call_cached(const Expr& e, std::int64_t order, const std::string& path) {
    std::string key = print(e) + "@" + std::to_string(order);
    if (const auto it = cache_.find(key); it != cache_.end()) return it->second;
    QSeries value = [&] {
      try {
        return eval_call(e, order, path);
      } catch (const EvalError&) {
        throw;
      } catch (const Error& err) {
        throw EvalError(err.kind(), err.what(), path);
      }
    }();
    cache_.emplace(std::move(key), value);
    return value;
  }

  SignedMonomial mono_arg(const Expr& a) const { return evaluate_monomial(a, bindings_); }

  // Named functions read a bare literal k as q^k.
  SignedMonomial named_arg(const Expr& a) const {
    if (a.kind == Kind::Number) return SignedMonomial::q_pow(a.value);
    return mono_arg(a);
  }

  QSeries eval_call(const Expr& e, std::int64_t order, const std::string& path) {
    const std::string& f = e.name;
    const auto& args = e.args;
    NamedTheta fn;
    if (named_theta_from_string(f, fn)) return named(fn, named_arg(*args[0]), order);
    if (f == "theta") return theta_sum({mono_arg(*args[0]), mono_arg(*args[1])}, order);
    if (f == "theta_neg") return theta_sum({-mono_arg(*args[0]), -mono_arg(*args[1])}, order);
    if (f == "theta_prod") return theta_product({mono_arg(*args[0]), mono_arg(*args[1])}, order);
    if (f == "poch") return pochhammer_inf(mono_arg(*args[0]), mono_arg(*args[1]), order);
    if (f == "gamma1") return gamma_omega(ThetaRatio::Gamma1, order);
    if (f == "gamma2") return gamma_omega(ThetaRatio::Gamma2, order);
    if (f == "omega1") return gamma_omega(ThetaRatio::Omega1, order);
    if (f == "omega2") return gamma_omega(ThetaRatio::Omega2, order);
    if (f == "alpha") return alpha_series(order);
    if (f == "beta") return beta_series(order);
    if (f == "mult") return multiplier_series(order);
    if (f == "L") return eisenstein_L(integer_literal(*args[0], "L index"), order);
    if (f == "E") return eisenstein_E(static_cast<int>(integer_literal(*args[0], "Eisenstein weight")), order);
    if (f == "lambert") {
      LambertSpec spec;
      spec.a = literal(*args[0], "Lambert a");
      spec.b = literal(*args[1], "Lambert b");
      spec.s = sign_literal(*args[2]);
      spec.c = literal(*args[3], "Lambert c");
      spec.d = literal(*args[4], "Lambert d");
      spec.p = static_cast<int>(integer_literal(*args[5], "Lambert power"));
      if (args.size() == 8) {
        spec.weight_offset = literal(*args[6], "Lambert weight offset");
        spec.weight_power = static_cast<int>(integer_literal(*args[7], "Lambert weight power"));
      }
      return unilateral_lambert(spec, order);
    }
    if (f == "bilambert") {
      return bilateral_lambert(mono_arg(*args[0]), integer_literal(*args[1], "bilateral modulus"),
                               static_cast<int>(integer_literal(*args[2], "bilateral power")), order);
    }
    if (f == "biratio") {
      return bilateral_ratio(mono_arg(*args[0]), mono_arg(*args[1]), integer_literal(*args[2], "bilateral modulus"),
                             order);
    }
    throw EvalError("domain", "function '" + f + "' cannot be evaluated", path);
  }

  const Bindings& bindings_;
  std::unordered_map<std::string, QSeries> cache_;
};

void collect_bilateral(const Expr& e, const Bindings& bindings, std::vector<BilateralCall>& out) {
  if (e.kind == Kind::Call && (e.name == "bilambert" || e.name == "biratio")) {
    BilateralCall c;
    c.text = print(e);
    if (e.name == "bilambert") {
      c.type = BilateralCall::Type::Lambert;
      c.x = evaluate_monomial(*e.args[0], bindings);
      c.modulus = integer_literal(*e.args[1], "bilateral modulus");
      c.power = static_cast<int>(integer_literal(*e.args[2], "bilateral power"));
    } else {
      c.type = BilateralCall::Type::Ratio;
      c.x = evaluate_monomial(*e.args[0], bindings);
      c.a = evaluate_monomial(*e.args[1], bindings);
      c.modulus = integer_literal(*e.args[2], "bilateral modulus");
    }
    out.push_back(std::move(c));
  }
  for (const auto& a : e.args) collect_bilateral(*a, bindings, out);
}

}  // namespace

QSeries evaluate(const Expr& e, std::int64_t order, std::int64_t granularity, const Bindings& bindings) {
  if (order < 1) throw DomainError("order must be positive");
  if (granularity < 1) throw DomainError("granularity must be positive");
  Evaluator ev(bindings);
  QSeries out = ev.eval(e, order, "root");
  const std::int64_t d = lcm64(out.granularity(), granularity);
  return d == out.granularity() ? out : out.with_granularity(d);
}

QSeries evaluate_to_order(const Expr& e, std::int64_t order, std::int64_t granularity, const Bindings& bindings) {
  std::int64_t work = order;
  QSeries out = evaluate(e, work, granularity, bindings);
  for (int attempt = 0; attempt < 6 && out.truncation() < order; ++attempt) {
    work += ceil_div(Rational(order) - out.truncation(), 1) + 2;
    out = evaluate(e, work, granularity, bindings);
  }
  return out.truncation() > order ? out.truncated(order) : out;
}

SignedMonomial evaluate_monomial(const Expr& e, const Bindings& bindings) {
  switch (e.kind) {
    case Kind::Number:
      if (e.value == 1) return {1, 0};
      if (e.value == -1) return {-1, 0};
      throw DomainError("monomial argument has coefficient " + to_string(e.value) + "; only +-1 is allowed");
    case Kind::Monomial:
      return SignedMonomial::q_pow(e.value);
    case Kind::Param: {
      const auto it = bindings.find(e.name);
      if (it == bindings.end()) throw DomainError("unbound parameter '" + e.name + "'");
      return it->second;
    }
    case Kind::Neg:
      return -evaluate_monomial(*e.args[0], bindings);
    case Kind::Mul:
      return evaluate_monomial(*e.args[0], bindings) * evaluate_monomial(*e.args[1], bindings);
    case Kind::Div:
      return evaluate_monomial(*e.args[0], bindings) / evaluate_monomial(*e.args[1], bindings);
    case Kind::Pow:
      return pow(evaluate_monomial(*e.args[0], bindings), e.index);
    default:
      throw DomainError("expected a monomial argument, got " + print(e));
  }
}

std::vector<BilateralCall> bilateral_calls(const Expr& e, const Bindings& bindings) {
  std::vector<BilateralCall> out;
  collect_bilateral(e, bindings, out);
  return out;
}

}  // namespace qseries::dsl

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qseries/expr.hpp"
#include "qseries/monomial.hpp"
#include "qseries/series.hpp"

namespace qseries::dsl {

using Bindings = std::map<std::string, SignedMonomial>;

/// An algebraic failure during evaluation, tagged with the failing node's
/// path from the root, e.g. "sub.rhs > div.den > call psineg".
class EvalError : public Error {
 public:
  EvalError(std::string kind, const std::string& message, std::string path);
  const char* kind() const noexcept override { return kind_.c_str(); }
  const std::string& path() const { return path_; }

 private:
  std::string kind_;
  std::string path_;
};

/// One pass at working order `order`. Divisions by series of positive
/// valuation lose precision, so the result may be known to less than `order`.
QSeries evaluate(const Expr& e, std::int64_t order, std::int64_t granularity = 1, const Bindings& bindings = {});

/// Raises the working order until the result is known to at least `order`
/// (or gives up after a few rounds and returns what it has).
QSeries evaluate_to_order(const Expr& e, std::int64_t order, std::int64_t granularity = 1,
                          const Bindings& bindings = {});

/// Arguments of theta-type functions: products, quotients and integer powers
/// of q^e, +-1 and bound parameters.
SignedMonomial evaluate_monomial(const Expr& e, const Bindings& bindings = {});

struct BilateralCall {
  enum class Type { Lambert, Ratio } type = Type::Lambert;
  SignedMonomial x;  // x for Lambert, z for Ratio
  SignedMonomial a;  // Ratio only
  std::int64_t modulus = 1;
  int power = 1;     // Lambert only
  std::string text;
};

/// Every bilambert/biratio call reachable in the tree, with arguments resolved.
std::vector<BilateralCall> bilateral_calls(const Expr& e, const Bindings& bindings = {});

}  // namespace qseries::dsl

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qseries/errors.hpp"
#include "qseries/rational.hpp"

namespace qseries::dsl {

// Grammar (whitespace insignificant):
//
//   expr     := term (('+' | '-') term)*
//   term     := factor (('*' | '/') factor)*
//   factor   := '-' factor | atom ('^' exponent)?
//   exponent := '-'? int | '(' '-'? int ('/' int)? ')'
//   atom     := rational | 'q' | name '(' args? ')' | name | '(' expr ')'
//             | 'root' '(' expr ',' int ')' | 'subq' '(' expr ',' rational ')'
//
// A literal "p/r" is read as one rational unless the '/' before it already
// made it a divisor, so "1/2/3" is (1/2)/3. A bare name other than q is a
// parameter bound per instantiation. Fractional exponents are only allowed
// on monomials: q^(1/8).

enum class Kind { Number, Monomial, Param, Call, Add, Sub, Mul, Div, Neg, Pow, Root, Subq };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  Kind kind = Kind::Number;
  Rational value;          // Number value, Monomial exponent, Subq factor
  std::int64_t index = 0;  // Pow exponent, Root index
  std::string name;        // Call or Param name
  std::vector<ExprPtr> args;
};

ExprPtr number(const Rational& v);
ExprPtr monomial(const Rational& e);
ExprPtr param(std::string name);
ExprPtr call(std::string name, std::vector<ExprPtr> args);
ExprPtr binary(Kind kind, ExprPtr a, ExprPtr b);
ExprPtr negate(ExprPtr a);
ExprPtr power(ExprPtr a, std::int64_t k);
ExprPtr root(ExprPtr a, std::int64_t n);
ExprPtr subq(ExprPtr a, const Rational& k);

class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column);
  const char* kind() const noexcept override { return "parse"; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

ExprPtr parse(std::string_view text);
std::string print(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

/// Allowed argument counts for a DSL function; empty if the name is unknown.
std::vector<int> function_arities(std::string_view name);

/// Names of every parameter referenced in the tree, sorted and unique.
std::vector<std::string> free_parameters(const Expr& e);

}  // namespace qseries::dsl

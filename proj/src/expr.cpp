#include "qseries/expr.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_map>

namespace qseries::dsl {

ExprPtr number(const Rational& v) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Number;
  e->value = v;
  return e;
}

ExprPtr monomial(const Rational& exponent) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Monomial;
  e->value = exponent;
  return e;
}

ExprPtr param(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Param;
  e->name = std::move(name);
  return e;
}

ExprPtr call(std::string name, std::vector<ExprPtr> args) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Call;
  e->name = std::move(name);
  e->args = std::move(args);
  return e;
}

ExprPtr binary(Kind kind, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->args = {std::move(a), std::move(b)};
  return e;
}

ExprPtr negate(ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Neg;
  e->args = {std::move(a)};
  return e;
}

ExprPtr power(ExprPtr a, std::int64_t k) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Pow;
  e->index = k;
  e->args = {std::move(a)};
  return e;
}

ExprPtr root(ExprPtr a, std::int64_t n) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Root;
  e->index = n;
  e->args = {std::move(a)};
  return e;
}

ExprPtr subq(ExprPtr a, const Rational& k) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Subq;
  e->value = k;
  e->args = {std::move(a)};
  return e;
}

ParseError::ParseError(const std::string& message, int line, int column)
    : Error(message + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
      line_(line),
      column_(column) {}

std::vector<int> function_arities(std::string_view name) {
  static const std::unordered_map<std::string_view, std::vector<int>> table = {
      {"phi", {1}},     {"psi", {1}},      {"phineg", {1}},    {"psineg", {1}},   {"chi_neg", {1}},
      {"chi_pos", {1}}, {"euler_f", {1}},  {"f_plus", {1}},    {"theta", {2}},    {"theta_neg", {2}},
      {"theta_prod", {2}}, {"poch", {2}},  {"gamma1", {0}},    {"gamma2", {0}},   {"omega1", {0}},
      {"omega2", {0}},  {"alpha", {0}},    {"beta", {0}},      {"mult", {0}},     {"L", {1}},
      {"E", {1}},       {"lambert", {6, 8}}, {"bilambert", {3}}, {"biratio", {3}}, {"root", {2}},
      {"subq", {2}},
  };
  const auto it = table.find(name);
  return it == table.end() ? std::vector<int>{} : it->second;
}

namespace {

enum class Tok { Int, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
  Tok type;
  std::string text;
  int line;
  int column;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    const int start_col = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Int, std::string(s.substr(i, j - i)), line, start_col});
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), line, start_col});
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    Tok t;
    switch (c) {
      case '+': t = Tok::Plus; break;
      case '-': t = Tok::Minus; break;
      case '*': t = Tok::Star; break;
      case '/': t = Tok::Slash; break;
      case '^': t = Tok::Caret; break;
      case '(': t = Tok::LParen; break;
      case ')': t = Tok::RParen; break;
      case ',': t = Tok::Comma; break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", line, start_col);
    }
    out.push_back({t, std::string(1, c), line, start_col});
    ++col;
    ++i;
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

const char* describe(Tok t) {
  switch (t) {
    case Tok::Int: return "integer";
    case Tok::Ident: return "name";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Caret: return "'^'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::End: return "end of input";
  }
  return "token";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  ExprPtr parse_all() {
    ExprPtr e = expr();
    if (peek().type != Tok::End) fail("unexpected " + std::string(describe(peek().type)));
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok t) {
    if (peek().type != t) return false;
    ++pos_;
    return true;
  }
  const Token& expect(Tok t) {
    if (peek().type != t) fail(std::string("expected ") + describe(t) + ", found " + describe(peek().type));
    return next();
  }
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, peek().line, peek().column); }
  [[noreturn]] void fail_at(const Token& t, const std::string& message) const {
    throw ParseError(message, t.line, t.column);
  }

  ExprPtr expr() {
    ExprPtr left = term();
    for (;;) {
      if (accept(Tok::Plus)) {
        left = binary(Kind::Add, left, term());
      } else if (accept(Tok::Minus)) {
        left = binary(Kind::Sub, left, term());
      } else {
        return left;
      }
    }
  }

  ExprPtr term() {
    ExprPtr left = factor(false);
    for (;;) {
      if (accept(Tok::Star)) {
        left = binary(Kind::Mul, left, factor(false));
      } else if (accept(Tok::Slash)) {
        left = binary(Kind::Div, left, factor(true));
      } else {
        return left;
      }
    }
  }

  ExprPtr factor(bool after_slash) {
    if (accept(Tok::Minus)) return negate(factor(after_slash));
    ExprPtr base = atom(after_slash);
    if (!accept(Tok::Caret)) return base;
    const Token& at = peek();
    const Rational e = exponent();
    if (base->kind == Kind::Monomial) return monomial(base->value * e);
    if (!is_integer(e)) fail_at(at, "fractional exponents are only allowed on q");
    return power(base, to_int64(e));
  }

  Rational exponent() {
    if (accept(Tok::LParen)) {
      const bool neg = accept(Tok::Minus);
      Rational v(BigInt(expect(Tok::Int).text));
      if (accept(Tok::Slash)) {
        const Token& den = expect(Tok::Int);
        if (BigInt(den.text) == 0) fail_at(den, "zero denominator");
        v /= Rational(BigInt(den.text));
      }
      expect(Tok::RParen);
      return neg ? Rational(-v) : v;
    }
    const bool neg = accept(Tok::Minus);
    Rational v(BigInt(expect(Tok::Int).text));
    return neg ? Rational(-v) : v;
  }

  // Integer, or p/r fused into one literal.
  Rational rational_literal(bool after_slash) {
    Rational v(BigInt(expect(Tok::Int).text));
    if (!after_slash && peek().type == Tok::Slash && peek(1).type == Tok::Int) {
      next();
      const Token& den = next();
      if (BigInt(den.text) == 0) fail_at(den, "zero denominator");
      v /= Rational(BigInt(den.text));
    }
    return v;
  }

  ExprPtr atom(bool after_slash) {
    const Token& t = peek();
    switch (t.type) {
      case Tok::Int:
        return number(rational_literal(after_slash));
      case Tok::LParen: {
        next();
        ExprPtr e = expr();
        expect(Tok::RParen);
        return e;
      }
      case Tok::Ident: {
        next();
        if (peek().type != Tok::LParen) {
          if (t.text == "q") return monomial(1);
          if (!function_arities(t.text).empty()) fail_at(t, "function '" + t.text + "' needs an argument list");
          return param(t.text);
        }
        return call_expr(t);
      }
      default:
        fail("unexpected " + std::string(describe(t.type)));
    }
  }

  ExprPtr call_expr(const Token& name) {
    const std::vector<int> arities = function_arities(name.text);
    if (arities.empty()) fail_at(name, "unknown function '" + name.text + "'");
    expect(Tok::LParen);
    std::vector<ExprPtr> args;
    if (name.text == "root" || name.text == "subq") {
      ExprPtr inner = expr();
      expect(Tok::Comma);
      const Token& at = peek();
      const bool neg = accept(Tok::Minus);
      if (peek().type != Tok::Int) fail(name.text == "root" ? "root index must be an integer literal"
                                                             : "subq factor must be a rational literal");
      Rational v = rational_literal(false);
      if (neg) v = -v;
      expect(Tok::RParen);
      if (name.text == "root") {
        if (!is_integer(v) || v < 1) fail_at(at, "root index must be a positive integer");
        return root(inner, to_int64(v));
      }
      if (sgn(v) <= 0) fail_at(at, "subq factor must be positive");
      return subq(inner, v);
    }
    if (peek().type != Tok::RParen) {
      args.push_back(expr());
      while (accept(Tok::Comma)) args.push_back(expr());
    }
    expect(Tok::RParen);
    if (std::find(arities.begin(), arities.end(), static_cast<int>(args.size())) == arities.end()) {
      std::string want;
      for (int a : arities) want += (want.empty() ? "" : " or ") + std::to_string(a);
      fail_at(name, "function '" + name.text + "' takes " + want + " argument(s), got " + std::to_string(args.size()));
    }
    return call(name.text, std::move(args));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::string rational_text(const Rational& v) { return to_string(v); }

bool is_sum(const Expr& e) { return e.kind == Kind::Add || e.kind == Kind::Sub; }
bool is_product(const Expr& e) { return e.kind == Kind::Mul || e.kind == Kind::Div; }

// Rightmost atom of a product chain, used to avoid accidental literal fusion.
const Expr& rightmost_factor(const Expr& e) {
  if (is_product(e) || e.kind == Kind::Neg) return rightmost_factor(*e.args.back());
  return e;
}

std::string print_rec(const Expr& e);

std::string wrap(const std::string& s) { return "(" + s + ")"; }

std::string print_number(const Rational& v) {
  return sgn(v) < 0 ? wrap(rational_text(v)) : rational_text(v);
}

std::string print_monomial(const Rational& e) {
  if (e == 1) return "q";
  if (is_integer(e) && sgn(e) > 0) return "q^" + rational_text(e);
  return "q^(" + rational_text(e) + ")";
}

std::string print_rec(const Expr& e) {
  switch (e.kind) {
    case Kind::Number:
      return print_number(e.value);
    case Kind::Monomial:
      return print_monomial(e.value);
    case Kind::Param:
      return e.name;
    case Kind::Call: {
      std::string s = e.name + "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) s += (i ? ", " : "") + print_rec(*e.args[i]);
      return s + ")";
    }
    case Kind::Root:
      return "root(" + print_rec(*e.args[0]) + ", " + std::to_string(e.index) + ")";
    case Kind::Subq:
      return "subq(" + print_rec(*e.args[0]) + ", " + rational_text(e.value) + ")";
    case Kind::Add:
    case Kind::Sub: {
      const std::string l = print_rec(*e.args[0]);
      std::string r = print_rec(*e.args[1]);
      if (is_sum(*e.args[1])) r = wrap(r);
      return l + (e.kind == Kind::Add ? " + " : " - ") + r;
    }
    case Kind::Mul:
    case Kind::Div: {
      const Expr& a = *e.args[0];
      const Expr& b = *e.args[1];
      std::string l = print_rec(a);
      if (is_sum(a)) l = wrap(l);
      std::string r = print_rec(b);
      bool paren = is_sum(b) || is_product(b);
      if (e.kind == Kind::Div && b.kind == Kind::Number) {
        const Expr& last = rightmost_factor(a);
        paren = paren || !is_integer(b.value) || (last.kind == Kind::Number && is_integer(last.value));
      }
      if (e.kind == Kind::Mul && b.kind == Kind::Number && !is_integer(b.value)) paren = true;
      if (paren) r = wrap(r);
      return l + (e.kind == Kind::Mul ? "*" : "/") + r;
    }
    case Kind::Neg: {
      const Expr& a = *e.args[0];
      std::string s = print_rec(a);
      if (is_sum(a) || is_product(a)) s = wrap(s);
      return "-" + s;
    }
    case Kind::Pow: {
      const Expr& a = *e.args[0];
      std::string s = print_rec(a);
      const bool atomic = a.kind == Kind::Param || a.kind == Kind::Call || a.kind == Kind::Root ||
                          a.kind == Kind::Subq || (a.kind == Kind::Number && is_integer(a.value) && sgn(a.value) >= 0);
      if (!atomic) s = wrap(a.kind == Kind::Number ? rational_text(a.value) : s);
      const std::string k = e.index < 0 ? wrap(std::to_string(e.index)) : std::to_string(e.index);
      return s + "^" + k;
    }
  }
  return "";
}

void collect_params(const Expr& e, std::set<std::string>& out) {
  if (e.kind == Kind::Param) out.insert(e.name);
  for (const auto& a : e.args) collect_params(*a, out);
}

}  // namespace

ExprPtr parse(std::string_view text) { return Parser(text).parse_all(); }

std::string print(const Expr& e) { return print_rec(e); }

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.value != b.value || a.index != b.index || a.name != b.name ||
      a.args.size() != b.args.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!structurally_equal(*a.args[i], *b.args[i])) return false;
  }
  return true;
}

std::vector<std::string> free_parameters(const Expr& e) {
  std::set<std::string> names;
  collect_params(e, names);
  return {names.begin(), names.end()};
}

}  // namespace qseries::dsl

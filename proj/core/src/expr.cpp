#include "weil/expr.hpp"

#include <algorithm>
#include <cctype>

#include "weil/errors.hpp"

namespace weil {

std::string_view primitive_name(Primitive p) {
  switch (p) {
    case Primitive::Sin: return "sin";
    case Primitive::Cos: return "cos";
    case Primitive::Exp: return "exp";
    case Primitive::Log: return "log";
    case Primitive::Sqrt: return "sqrt";
  }
  return "?";
}

std::optional<Primitive> primitive_from_name(std::string_view name) {
  for (auto p : {Primitive::Sin, Primitive::Cos, Primitive::Exp, Primitive::Log, Primitive::Sqrt})
    if (primitive_name(p) == name) return p;
  return std::nullopt;
}

Expr Expr::make(Node node) { return Expr(std::make_shared<const Node>(std::move(node))); }

Expr Expr::variable(std::size_t index) {
  Node n;
  n.kind = Kind::Variable;
  n.variable = index;
  return make(std::move(n));
}

Expr Expr::constant(const Rational& value) {
  Node n;
  n.kind = Kind::Constant;
  n.value = value;
  return make(std::move(n));
}

Expr Expr::apply(Primitive p, const Expr& arg) {
  Node n;
  n.kind = Kind::Apply;
  n.primitive = p;
  n.lhs = arg.node_;
  return make(std::move(n));
}

namespace {

Expr::Node binary(Expr::Kind kind, std::shared_ptr<const Expr::Node> a, std::shared_ptr<const Expr::Node> b) {
  Expr::Node n;
  n.kind = kind;
  n.lhs = std::move(a);
  n.rhs = std::move(b);
  return n;
}

}  // namespace

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() + b.value());
  return Expr::make(binary(Expr::Kind::Add, a.node_, b.node_));
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() - b.value());
  return Expr::make(binary(Expr::Kind::Sub, a.node_, b.node_));
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() * b.value());
  return Expr::make(binary(Expr::Kind::Mul, a.node_, b.node_));
}

Expr operator/(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant() && b.value() != 0) return Expr::constant(a.value() / b.value());
  return Expr::make(binary(Expr::Kind::Div, a.node_, b.node_));
}

Expr operator-(const Expr& a) {
  if (a.is_constant()) return Expr::constant(-a.value());
  Expr::Node n;
  n.kind = Expr::Kind::Neg;
  n.lhs = a.node_;
  return Expr::make(std::move(n));
}

Expr pow(const Expr& base, int exponent) {
  if (base.is_constant() && (exponent >= 0 || base.value() != 0)) {
    Rational r(1);
    Rational b = exponent >= 0 ? base.value() : Rational(1) / base.value();
    for (int i = 0; i < std::abs(exponent); ++i) r *= b;
    return Expr::constant(r);
  }
  Expr::Node n;
  n.kind = Expr::Kind::Pow;
  n.exponent = exponent;
  n.lhs = base.node_;
  return Expr::make(std::move(n));
}

bool Expr::is_closed() const {
  switch (kind()) {
    case Kind::Variable: return false;
    case Kind::Constant: return true;
    case Kind::Neg:
    case Kind::Pow:
    case Kind::Apply: return lhs().is_closed();
    default: return lhs().is_closed() && rhs().is_closed();
  }
}

bool Expr::is_polynomial() const {
  switch (kind()) {
    case Kind::Variable:
    case Kind::Constant: return true;
    case Kind::Add:
    case Kind::Sub:
    case Kind::Mul: return lhs().is_polynomial() && rhs().is_polynomial();
    case Kind::Neg: return lhs().is_polynomial();
    case Kind::Pow: return exponent() >= 0 && lhs().is_polynomial();
    case Kind::Div: return lhs().is_polynomial() && rhs().is_closed() && rhs().is_polynomial();
    case Kind::Apply: return false;
  }
  return false;
}

std::size_t Expr::arity_hint() const {
  switch (kind()) {
    case Kind::Variable: return variable_index() + 1;
    case Kind::Constant: return 0;
    case Kind::Neg:
    case Kind::Pow:
    case Kind::Apply: return lhs().arity_hint();
    default: return std::max(lhs().arity_hint(), rhs().arity_hint());
  }
}

Expr Expr::substitute(std::span<const Expr> replacements) const {
  switch (kind()) {
    case Kind::Variable:
      if (variable_index() >= replacements.size())
        throw DimensionMismatch("substitution has no replacement for t" + std::to_string(variable_index()));
      return replacements[variable_index()];
    case Kind::Constant: return *this;
    case Kind::Add: return lhs().substitute(replacements) + rhs().substitute(replacements);
    case Kind::Sub: return lhs().substitute(replacements) - rhs().substitute(replacements);
    case Kind::Mul: return lhs().substitute(replacements) * rhs().substitute(replacements);
    case Kind::Div: return lhs().substitute(replacements) / rhs().substitute(replacements);
    case Kind::Neg: return -lhs().substitute(replacements);
    case Kind::Pow: return pow(lhs().substitute(replacements), exponent());
    case Kind::Apply: return Expr::apply(primitive(), lhs().substitute(replacements));
  }
  return *this;
}

namespace {

int precedence(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
  }
}

std::string render(const Expr& e);

std::string wrap(const Expr& child, int min_prec) {
  std::string s = render(child);
  bool needs = precedence(child.kind()) < min_prec ||
               (child.kind() == Expr::Kind::Constant && (child.value() < 0 || child.value().get_den() != 1) &&
                min_prec > 1);
  return needs ? "(" + s + ")" : s;
}

std::string render(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Variable: return "t" + std::to_string(e.variable_index());
    case Expr::Kind::Constant: return e.value().get_str();
    case Expr::Kind::Add: return wrap(e.lhs(), 1) + " + " + wrap(e.rhs(), 2);
    case Expr::Kind::Sub: return wrap(e.lhs(), 1) + " - " + wrap(e.rhs(), 2);
    case Expr::Kind::Mul: return wrap(e.lhs(), 2) + "*" + wrap(e.rhs(), 3);
    case Expr::Kind::Div: return wrap(e.lhs(), 2) + "/" + wrap(e.rhs(), 3);
    case Expr::Kind::Neg: return "-" + wrap(e.lhs(), 4);
    case Expr::Kind::Pow: {
      std::string ex = e.exponent() < 0 ? "(" + std::to_string(e.exponent()) + ")" : std::to_string(e.exponent());
      return wrap(e.lhs(), 5) + "^" + ex;
    }
    case Expr::Kind::Apply: return std::string(primitive_name(e.primitive())) + "(" + render(e.lhs()) + ")";
  }
  return "?";
}

}  // namespace

std::string Expr::to_string() const { return render(*this); }

// ---------------------------------------------------------------------------

SmoothMap::SmoothMap(std::size_t arity, std::vector<Expr> outputs) : arity_(arity), outputs_(std::move(outputs)) {
  for (std::size_t i = 0; i < outputs_.size(); ++i)
    if (outputs_[i].arity_hint() > arity_)
      throw DimensionMismatch("output " + std::to_string(i) + " uses t" +
                              std::to_string(outputs_[i].arity_hint() - 1) + " but the arity is " +
                              std::to_string(arity_));
}

SmoothMap SmoothMap::identity(std::size_t n) { return projection(n, 0, n); }

SmoothMap SmoothMap::projection(std::size_t n, std::size_t first, std::size_t count) {
  if (first + count > n) throw DimensionMismatch("projection out of range");
  std::vector<Expr> outs;
  for (std::size_t i = first; i < first + count; ++i) outs.push_back(Expr::variable(i));
  return SmoothMap(n, std::move(outs));
}

SmoothMap SmoothMap::constant(std::size_t arity, std::vector<Rational> values) {
  std::vector<Expr> outs;
  for (const auto& v : values) outs.push_back(Expr::constant(v));
  return SmoothMap(arity, std::move(outs));
}

bool SmoothMap::is_polynomial() const {
  return std::all_of(outputs_.begin(), outputs_.end(), [](const Expr& e) { return e.is_polynomial(); });
}

SmoothMap SmoothMap::after(const SmoothMap& inner) const {
  if (inner.coarity() != arity_)
    throw DimensionMismatch("composing a map of arity " + std::to_string(arity_) + " after one of coarity " +
                            std::to_string(inner.coarity()));
  std::vector<Expr> outs;
  outs.reserve(outputs_.size());
  for (const auto& e : outputs_) outs.push_back(e.substitute(inner.outputs_));
  return SmoothMap(inner.arity_, std::move(outs));
}

SmoothMap SmoothMap::select(std::size_t first, std::size_t count) const {
  if (first + count > outputs_.size()) throw DimensionMismatch("output selection out of range");
  return SmoothMap(arity_, std::vector<Expr>(outputs_.begin() + static_cast<std::ptrdiff_t>(first),
                                             outputs_.begin() + static_cast<std::ptrdiff_t>(first + count)));
}

SmoothMap SmoothMap::pair(const SmoothMap& other) const {
  if (other.arity_ != arity_) throw DimensionMismatch("pairing maps of different arity");
  std::vector<Expr> outs = outputs_;
  outs.insert(outs.end(), other.outputs_.begin(), other.outputs_.end());
  return SmoothMap(arity_, std::move(outs));
}

std::string SmoothMap::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < outputs_.size(); ++i) {
    if (i) s += ", ";
    s += outputs_[i].to_string();
  }
  return s + ")";
}

// ---------------------------------------------------------------------------
// Parser: recursive descent.
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := '-' unary | '+' unary | power
//   power   := primary ('^' exponent)?
//   primary := number | name | name '(' sum ')' | '(' sum ')'

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text, std::size_t offset = 0) : text_(text), offset_(offset) {}

  Expr parse_all() {
    Expr e = sum();
    skip_ws();
    if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
    return e;
  }

 private:
  Expr sum() {
    Expr e = product();
    while (true) {
      skip_ws();
      if (accept('+'))
        e = e + product();
      else if (accept('-'))
        e = e - product();
      else
        return e;
    }
  }

  Expr product() {
    Expr e = unary();
    while (true) {
      skip_ws();
      if (accept('*'))
        e = e * unary();
      else if (accept('/'))
        e = e / unary();
      else
        return e;
    }
  }

  Expr unary() {
    skip_ws();
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    skip_ws();
    if (accept('^')) return pow(base, exponent());
    return base;
  }

  int exponent() {
    skip_ws();
    bool paren = accept('(');
    skip_ws();
    bool negative = false;
    if (accept('-'))
      negative = true;
    else
      accept('+');
    skip_ws();
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    if (pos_ - start > 4) fail("exponent out of range");
    int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
    if (paren) {
      skip_ws();
      if (!accept(')')) fail("expected ')'");
    }
    return negative ? -e : e;
  }

  Expr primary() {
    skip_ws();
    if (at_end()) fail("unexpected end of expression");
    char c = peek();
    if (accept('(')) {
      Expr e = sum();
      skip_ws();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (auto prim = primitive_from_name(name)) {
        skip_ws();
        if (!accept('(')) fail("expected '(' after " + name);
        Expr arg = sum();
        skip_ws();
        if (!accept(')')) fail("expected ')'");
        return Expr::apply(*prim, arg);
      }
      return Expr::variable(variable_index(name, start));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  Expr number() {
    std::size_t start = pos_;
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) ++pos_;
    try {
      return Expr::constant(parse_rational(text_.substr(start, pos_ - start)));
    } catch (const ParseError&) {
      pos_ = start;
      fail("malformed number");
    }
  }

  std::size_t variable_index(const std::string& name, std::size_t at) const {
    if (name == "t" || name == "x") return 0;
    if (name == "y") return 1;
    if (name.size() > 1 && name[0] == 't' &&
        std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) &&
        name.size() < 8)
      return static_cast<std::size_t>(std::stoul(name.substr(1)));
    throw UnknownVariable(name, offset_ + at);
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, offset_ + pos_); }

  bool accept(char c) {
    if (!at_end() && peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  std::string_view text_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

/// Splits at commas not nested in parentheses.
std::vector<std::pair<std::size_t, std::string_view>> split_top_level(std::string_view text, std::size_t offset) {
  std::vector<std::pair<std::size_t, std::string_view>> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (text[i] == ',' && depth == 0) {
      parts.emplace_back(offset + start, text.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.emplace_back(offset + start, text.substr(start));
  return parts;
}

}  // namespace

Expr parse_expr(std::string_view text) { return ExprParser(text).parse_all(); }

SmoothMap parse_smooth_map(std::string_view text, std::optional<std::size_t> arity) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  std::string_view body = text.substr(begin, end - begin);
  std::size_t offset = begin;

  // Unwrap "(a, b, ...)" when the outer parentheses enclose a top-level comma.
  if (body.size() >= 2 && body.front() == '(' && body.back() == ')') {
    int depth = 0;
    bool outer_closes_at_end = true;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (body[i] == '(') ++depth;
      if (body[i] == ')') --depth;
      if (depth == 0 && i + 1 < body.size()) {
        outer_closes_at_end = false;
        break;
      }
    }
    auto inner = body.substr(1, body.size() - 2);
    if (outer_closes_at_end && split_top_level(inner, 0).size() > 1) {
      body = inner;
      offset += 1;
    }
  }

  std::vector<Expr> outputs;
  for (const auto& [pos, piece] : split_top_level(body, offset)) outputs.push_back(ExprParser(piece, pos).parse_all());
  std::size_t hint = 0;
  for (const auto& e : outputs) hint = std::max(hint, e.arity_hint());
  return SmoothMap(arity.value_or(std::max<std::size_t>(hint, 1)), std::move(outputs));
}

}  // namespace weil

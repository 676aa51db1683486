#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "weil/rational.hpp"

namespace weil {

enum class Primitive { Sin, Cos, Exp, Log, Sqrt };

std::string_view primitive_name(Primitive p);
std::optional<Primitive> primitive_from_name(std::string_view name);

/// Immutable expression tree over input variables, rational constants, the
/// field operations, integer powers and the primitives sin cos exp log sqrt.
/// Subtrees are shared.
class Expr {
 public:
  enum class Kind { Variable, Constant, Add, Sub, Mul, Div, Neg, Pow, Apply };

  struct Node {
    Kind kind = Kind::Constant;
    std::size_t variable = 0;
    Rational value;
    int exponent = 0;
    Primitive primitive = Primitive::Sin;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

  static Expr variable(std::size_t index);
  static Expr constant(const Rational& value);
  static Expr apply(Primitive p, const Expr& arg);

  Kind kind() const noexcept { return node_->kind; }
  std::size_t variable_index() const noexcept { return node_->variable; }
  const Rational& value() const noexcept { return node_->value; }
  int exponent() const noexcept { return node_->exponent; }
  Primitive primitive() const noexcept { return node_->primitive; }
  Expr lhs() const { return Expr(node_->lhs); }
  Expr rhs() const { return Expr(node_->rhs); }
  const Node& node() const noexcept { return *node_; }

  bool is_constant() const noexcept { return node_->kind == Kind::Constant; }
  /// Built from variables, constants, + - *, nonnegative powers and division
  /// by constant subtrees only.
  bool is_polynomial() const;
  /// Free of variables.
  bool is_closed() const;
  /// Largest variable index + 1, or 0 when closed.
  std::size_t arity_hint() const;

  /// Replaces variable i by replacements[i].
  Expr substitute(std::span<const Expr> replacements) const;

  std::string to_string() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr pow(const Expr& base, int exponent);

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Expr make(Node node);

  std::shared_ptr<const Node> node_;
};

inline Expr sin(const Expr& e) { return Expr::apply(Primitive::Sin, e); }
inline Expr cos(const Expr& e) { return Expr::apply(Primitive::Cos, e); }
inline Expr exp(const Expr& e) { return Expr::apply(Primitive::Exp, e); }
inline Expr log(const Expr& e) { return Expr::apply(Primitive::Log, e); }
inline Expr sqrt(const Expr& e) { return Expr::apply(Primitive::Sqrt, e); }

/// A smooth map R^n -> R^m given by one expression per output.
class SmoothMap {
 public:
  /// Throws DimensionMismatch if an output mentions a variable >= arity.
  SmoothMap(std::size_t arity, std::vector<Expr> outputs);

  static SmoothMap identity(std::size_t n);
  /// (t_first, ..., t_{first+count-1}) as a map out of R^n.
  static SmoothMap projection(std::size_t n, std::size_t first, std::size_t count);
  static SmoothMap constant(std::size_t arity, std::vector<Rational> values);

  std::size_t arity() const noexcept { return arity_; }
  std::size_t coarity() const noexcept { return outputs_.size(); }
  const Expr& output(std::size_t i) const { return outputs_.at(i); }
  const std::vector<Expr>& outputs() const noexcept { return outputs_; }

  bool is_polynomial() const;

  /// this o inner. Requires inner.coarity() == arity().
  SmoothMap after(const SmoothMap& inner) const;

  /// Outputs [first, first + count).
  SmoothMap select(std::size_t first, std::size_t count) const;

  /// Concatenated outputs; both maps share the arity.
  SmoothMap pair(const SmoothMap& other) const;

  std::string to_string() const;

 private:
  std::size_t arity_;
  std::vector<Expr> outputs_;
};

/// Parses infix arithmetic: variables t0..t{n-1} (aliases `t` and `x` for t0,
/// `y` for t1), rational or decimal literals, + - * / ^ with integer
/// exponents, and sin cos exp log sqrt.
Expr parse_expr(std::string_view text);

/// A comma-separated list of expressions, optionally wrapped in one pair of
/// parentheses: `(t, t^2 + t^3)`. The arity defaults to the largest
/// variable index used plus one.
SmoothMap parse_smooth_map(std::string_view text, std::optional<std::size_t> arity = std::nullopt);

}  // namespace weil

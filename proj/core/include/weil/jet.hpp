#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "weil/element.hpp"
#include "weil/errors.hpp"
#include "weil/expr.hpp"

namespace weil {

namespace detail {

Rational closed_value(const Expr& e);

template <class R, class Ops>
R power(const R& base, int exponent, const Ops& ops) {
  if (exponent < 0) return power(ops.reciprocal(base), -exponent, ops);
  R result = ops.constant(Rational(1));
  R square = base;
  for (unsigned e = static_cast<unsigned>(exponent); e != 0; e >>= 1) {
    if (e & 1u) result = result * square;
    if (e > 1) square = square * square;
  }
  return result;
}

}  // namespace detail

/// Evaluates an expression tree over a ring R.
///
/// `Ops` supplies `constant(Rational)`, `reciprocal(R)` and
/// `apply(Primitive, R)`; R itself provides + - * and negation. Division by a
/// variable-free subtree is folded into an exact rational scaling, so
/// polynomial expressions never need a general reciprocal.
template <class R, class Ops>
R evaluate(const Expr& e, std::span<const R> inputs, const Ops& ops) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Variable:
      if (e.variable_index() >= inputs.size())
        throw DimensionMismatch("expression uses t" + std::to_string(e.variable_index()) + " but only " +
                                std::to_string(inputs.size()) + " inputs were given");
      return inputs[e.variable_index()];
    case K::Constant: return ops.constant(e.value());
    case K::Add: return evaluate(e.lhs(), inputs, ops) + evaluate(e.rhs(), inputs, ops);
    case K::Sub: return evaluate(e.lhs(), inputs, ops) - evaluate(e.rhs(), inputs, ops);
    case K::Mul: return evaluate(e.lhs(), inputs, ops) * evaluate(e.rhs(), inputs, ops);
    case K::Neg: return -evaluate(e.lhs(), inputs, ops);
    case K::Div: {
      R num = evaluate(e.lhs(), inputs, ops);
      if (e.rhs().is_polynomial() && e.rhs().is_closed()) {
        Rational q = detail::closed_value(e.rhs());
        if (q == 0) throw DomainError("division by zero");
        return num * ops.constant(1 / q);
      }
      return num * ops.reciprocal(evaluate(e.rhs(), inputs, ops));
    }
    case K::Pow: return detail::power(evaluate(e.lhs(), inputs, ops), e.exponent(), ops);
    case K::Apply: return ops.apply(e.primitive(), evaluate(e.lhs(), inputs, ops));
  }
  throw Error("malformed expression");
}

/// Taylor coefficients p^(j)(r)/j!, j < order, of a primitive at r.
///
/// Exact mode produces a coefficient only when every one is rational (sin,
/// cos and exp at 0, log at 1, sqrt at a perfect square) and throws
/// ScalarModeError otherwise, so callers can fall back to real mode.
std::vector<Rational> primitive_series(Primitive p, const Rational& r, unsigned order);
std::vector<double> primitive_series(Primitive p, double r, unsigned order);

/// Coefficients (-1)^j / r^{j+1} of 1/(r + h).
std::vector<Rational> reciprocal_series(const Rational& r, unsigned order);
std::vector<double> reciprocal_series(double r, unsigned order);

/// Ring operations on Weil elements of scalar mode S, at any nesting depth.
template <class S>
class JetOps {
 public:
  using traits = scalar_traits<Element<S>>;
  using base_type = typename traits::base_type;

  JetOps(WeilAlgebra algebra, S zero) : algebra_(std::move(algebra)), zero_(std::move(zero)) {}

  Element<S> constant(const Rational& q) const {
    return Element<S>::constant_like(algebra_, scalar_traits<S>::from_rational(zero_, q), zero_);
  }

  Element<S> reciprocal(const Element<S>& a) const {
    const base_type r = traits::base_value(a);
    if (r == 0) throw DomainError("division by an element with zero augmentation");
    return series(a, reciprocal_series(r, traits::nil_bound(a)));
  }

  Element<S> apply(Primitive p, const Element<S>& a) const {
    return series(a, primitive_series(p, traits::base_value(a), traits::nil_bound(a)));
  }

 private:
  /// sum_j c_j (a - r)^j by Horner's rule; (a - r) is nilpotent of order
  /// nil_bound(a), so the coefficient list is exactly long enough.
  Element<S> series(const Element<S>& a, const std::vector<base_type>& c) const {
    const base_type r = traits::base_value(a);
    Element<S> eta = a - traits::from_base(a, r);
    Element<S> acc = traits::from_base(a, c.back());
    for (std::size_t j = c.size() - 1; j-- > 0;) acc = acc * eta + traits::from_base(a, c[j]);
    return acc;
  }

  WeilAlgebra algebra_;
  S zero_;
};

/// Plain scalar evaluation (no nilpotent part).
template <class T>
struct ScalarOps {
  T constant(const Rational& q) const { return scalar_traits<T>::from_rational(T(0), q); }
  T reciprocal(const T& a) const {
    if (a == 0) throw DomainError("division by zero");
    return reciprocal_series(a, 1)[0];
  }
  T apply(Primitive p, const T& a) const { return primitive_series(p, a, 1)[0]; }
};

template <class T>
T evaluate_scalar(const Expr& e, std::span<const T> inputs) {
  return evaluate(e, inputs, ScalarOps<T>{});
}

/// The Weil functor on maps: lifts `f` through W at a point of W^n.
///
/// Every coordinate is propagated in the point's scalar mode. `zero` fixes
/// that mode when the point is empty (a constant map).
template <class S>
std::vector<Element<S>> taylor_lift(const SmoothMap& f, const WeilAlgebra& w, std::span<const Element<S>> point,
                                    const S& zero) {
  if (point.size() != f.arity())
    throw DimensionMismatch("map has arity " + std::to_string(f.arity()) + ", point has " +
                            std::to_string(point.size()) + " components");
  for (const auto& p : point)
    if (!(p.algebra() == w)) throw AlgebraMismatch("point component lies outside " + w.summary());
  JetOps<S> ops(w, zero);
  std::vector<Element<S>> out;
  out.reserve(f.coarity());
  for (const auto& e : f.outputs()) out.push_back(evaluate(e, point, ops));
  return out;
}

template <class S>
std::vector<Element<S>> taylor_lift(const SmoothMap& f, const WeilAlgebra& w, std::span<const Element<S>> point) {
  if (!point.empty()) return taylor_lift(f, w, point, scalar_traits<S>::zero_like(point[0][0]));
  if constexpr (std::is_same_v<S, Rational> || std::is_same_v<S, double>)
    return taylor_lift(f, w, point, S(0));
  else
    throw DimensionMismatch("cannot infer the scalar mode of an empty nested point");
}

template <class S>
Element<S> taylor_lift(const Expr& e, const WeilAlgebra& w, std::span<const Element<S>> point) {
  return taylor_lift(SmoothMap(point.size(), {e}), w, point).front();
}

/// Canonical point (x_1, ..., x_n) of W^n formed by the presentation
/// variables.
template <class S>
std::vector<Element<S>> generic_point(const WeilAlgebra& w) {
  std::vector<Element<S>> pt;
  for (std::size_t i = 0; i < w.nvars(); ++i) pt.push_back(Element<S>::variable(w, i));
  return pt;
}

/// Coordinates of a double-mode element rounded from an exact one.
inline Element<double> to_double(const Element<Rational>& a) {
  std::vector<double> c;
  c.reserve(a.dimension());
  for (const auto& q : a.coords()) c.push_back(q.get_d());
  return Element<double>(a.algebra(), std::move(c));
}

}  // namespace weil

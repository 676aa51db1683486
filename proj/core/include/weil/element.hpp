#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "weil/algebra.hpp"
#include "weil/errors.hpp"
#include "weil/scalar.hpp"

namespace weil {

/// An element of a Weil algebra: coordinates over its quotient basis.
///
/// The scalar type fixes the mode: Rational for exact work, double for real
/// arithmetic through transcendental primitives, or another Element type when
/// the coordinates themselves live in a second Weil algebra. Modes never mix;
/// mixing is a compile error.
template <class S>
class Element {
 public:
  using scalar_type = S;
  using traits = scalar_traits<S>;

  Element(WeilAlgebra algebra, std::vector<S> coords) : algebra_(std::move(algebra)), coords_(std::move(coords)) {
    if (coords_.size() != algebra_.dimension())
      throw DimensionMismatch("element has " + std::to_string(coords_.size()) +
                              " coordinates, algebra dimension is " + std::to_string(algebra_.dimension()));
  }

  /// Constant element with the given value; `zero` fixes the scalar context.
  static Element constant_like(const WeilAlgebra& algebra, const S& value, const S& zero) {
    std::vector<S> coords(algebra.dimension(), zero);
    coords[0] = value;
    return Element(algebra, std::move(coords));
  }

  static Element zero(const WeilAlgebra& algebra)
    requires std::is_same_v<S, Rational> || std::is_same_v<S, double>
  {
    return Element(algebra, std::vector<S>(algebra.dimension(), S(0)));
  }

  static Element constant(const WeilAlgebra& algebra, const S& value)
    requires std::is_same_v<S, Rational> || std::is_same_v<S, double>
  {
    return constant_like(algebra, value, S(0));
  }

  /// The class of the i-th presentation variable.
  static Element variable(const WeilAlgebra& algebra, std::size_t index)
    requires std::is_same_v<S, Rational> || std::is_same_v<S, double>
  {
    return from_polynomial(algebra, Polynomial::variable(algebra.nvars(), index));
  }

  static Element from_polynomial(const WeilAlgebra& algebra, const Polynomial& p)
    requires std::is_same_v<S, Rational> || std::is_same_v<S, double>
  {
    auto q = algebra.coordinates(p);
    std::vector<S> coords;
    coords.reserve(q.size());
    for (const auto& c : q) coords.push_back(traits::from_rational(S(0), c));
    return Element(algebra, std::move(coords));
  }

  const WeilAlgebra& algebra() const noexcept { return algebra_; }
  std::size_t dimension() const noexcept { return coords_.size(); }
  std::span<const S> coords() const noexcept { return coords_; }
  const S& operator[](std::size_t i) const { return coords_[i]; }
  S& coord(std::size_t i) { return coords_[i]; }

  /// Coefficient of the constant monomial.
  const S& augmentation() const { return coords_[0]; }

  bool is_zero() const {
    for (const auto& c : coords_)
      if (!traits::is_zero(c)) return false;
    return true;
  }

  Element& operator+=(const Element& other) {
    require_compatible(other);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] = S(coords_[i] + other.coords_[i]);
    return *this;
  }

  Element& operator-=(const Element& other) {
    require_compatible(other);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] = S(coords_[i] - other.coords_[i]);
    return *this;
  }

  Element operator-() const {
    Element r(*this);
    for (auto& c : r.coords_) c = S(-c);
    return r;
  }

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }

  friend Element operator*(const Element& a, const Element& b) {
    a.require_compatible(b);
    const std::size_t dim = a.coords_.size();
    const S zero = traits::zero_like(a.coords_[0]);
    std::vector<S> out(dim, zero);
    for (std::size_t i = 0; i < dim; ++i) {
      if (traits::is_zero(a.coords_[i])) continue;
      for (std::size_t j = 0; j < dim; ++j) {
        if (traits::is_zero(b.coords_[j])) continue;
        auto terms = a.algebra_.product(i, j);
        if (terms.empty()) continue;
        S p = S(a.coords_[i] * b.coords_[j]);
        for (const auto& t : terms) {
          if (t.coeff.unit)
            out[t.index] = S(out[t.index] + p);
          else
            out[t.index] = S(out[t.index] + traits::scale(p, t.coeff));
        }
      }
    }
    return Element(a.algebra_, std::move(out));
  }

  Element& operator*=(const Element& other) { return *this = *this * other; }

  /// Multiplies every coordinate by a structure-free rational.
  Element scaled(const Rational& q) const {
    Element r(*this);
    for (auto& c : r.coords_) c = traits::scale(c, q);
    return r;
  }

  /// Multiplies every coordinate by a scalar of this element's mode.
  Element times_scalar(const S& s) const {
    Element r(*this);
    for (auto& c : r.coords_) c = S(c * s);
    return r;
  }

  friend bool operator==(const Element& a, const Element& b) {
    return a.algebra_ == b.algebra_ && a.coords_ == b.coords_;
  }

  /// Coordinatewise closeness; exact equality in exact modes.
  bool close_to(const Element& other, Tolerance tol = {}) const {
    if (!(algebra_ == other.algebra_)) return false;
    for (std::size_t i = 0; i < coords_.size(); ++i)
      if (!traits::close(coords_[i], other.coords_[i], tol.relative, tol.absolute)) return false;
    return true;
  }

  void require_compatible(const Element& other) const {
    if (!algebra_.shares_representation(other.algebra_) && !(algebra_ == other.algebra_))
      throw AlgebraMismatch("operands belong to different Weil algebras: " + algebra_.summary() +
                            " vs " + other.algebra_.summary());
  }

 private:
  WeilAlgebra algebra_;
  std::vector<S> coords_;
};

template <class S>
const S& augmentation(const Element<S>& a) {
  return a.augmentation();
}

/// Nested mode: a Weil element whose coordinates are scalars of mode S.
template <class S>
struct scalar_traits<Element<S>> {
  using inner = scalar_traits<S>;
  using base_type = typename inner::base_type;
  static constexpr bool exact = inner::exact;

  static Element<S> zero_like(const Element<S>& x) {
    S z = inner::zero_like(x[0]);
    return Element<S>(x.algebra(), std::vector<S>(x.dimension(), z));
  }
  static Element<S> from_rational(const Element<S>& proto, const Rational& q) {
    S z = inner::zero_like(proto[0]);
    return Element<S>::constant_like(proto.algebra(), inner::from_rational(z, q), z);
  }
  static Element<S> from_base(const Element<S>& proto, const base_type& b) {
    S z = inner::zero_like(proto[0]);
    return Element<S>::constant_like(proto.algebra(), inner::from_base(z, b), z);
  }
  static bool is_zero(const Element<S>& x) { return x.is_zero(); }
  static Element<S> scale(const Element<S>& x, const StructureCoefficient& c) {
    std::vector<S> coords;
    coords.reserve(x.dimension());
    for (const auto& v : x.coords()) coords.push_back(inner::scale(v, c));
    return Element<S>(x.algebra(), std::move(coords));
  }
  static Element<S> scale(const Element<S>& x, const Rational& q) { return x.scaled(q); }
  static Element<S> mul_base(const Element<S>& x, const base_type& b) {
    std::vector<S> coords;
    coords.reserve(x.dimension());
    for (const auto& v : x.coords()) coords.push_back(inner::mul_base(v, b));
    return Element<S>(x.algebra(), std::move(coords));
  }
  static base_type base_value(const Element<S>& x) { return inner::base_value(x[0]); }
  static unsigned nil_bound(const Element<S>& x) {
    return x.algebra().nilpotency_order() + inner::nil_bound(x[0]) - 1;
  }
  static std::optional<Rational> as_rational(const Element<S>& x) {
    for (std::size_t i = 1; i < x.dimension(); ++i)
      if (!inner::is_zero(x[i])) return std::nullopt;
    return inner::as_rational(x[0]);
  }
  static bool close(const Element<S>& a, const Element<S>& b, double rel, double abs) {
    return a.close_to(b, Tolerance{rel, abs});
  }
  static std::string to_string(const Element<S>& x);
  static bool is_atomic(const Element<S>&) { return false; }
};

/// Canonical text: basis monomials in graded-lex order with their
/// coefficients, e.g. `2 + 5*y^3`. Composite coefficients are parenthesized.
template <class S>
std::string to_string(const Element<S>& a) {
  using traits = scalar_traits<S>;
  const auto& names = a.algebra().variables();
  std::string s;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    const S& c = a[i];
    if (traits::is_zero(c)) continue;
    std::string coeff = traits::to_string(c);
    if (!traits::is_atomic(c)) coeff = "(" + coeff + ")";
    const Monomial& m = a.algebra().basis()[i];
    std::string term;
    if (m.is_one())
      term = coeff;
    else if (coeff == "1")
      term = weil::to_string(m, names);
    else if (coeff == "-1")
      term = "-" + weil::to_string(m, names);
    else
      term = coeff + "*" + weil::to_string(m, names);
    if (!s.empty()) {
      if (term.front() == '-')
        s += " - " + term.substr(1);
      else
        s += " + " + term;
    } else {
      s = term;
    }
  }
  return s.empty() ? "0" : s;
}

template <class S>
std::string scalar_traits<Element<S>>::to_string(const Element<S>& x) {
  return weil::to_string(x);
}

}  // namespace weil

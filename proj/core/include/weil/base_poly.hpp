#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "weil/element.hpp"
#include "weil/errors.hpp"
#include "weil/monomial.hpp"

namespace weil {

/// Polynomial in base variables s0, s1, ... with coefficients in a ring C,
/// never truncated. C is any type with scalar_traits: a Weil element, or a
/// Weil element whose scalars are themselves BasePolys.
///
/// Zero coefficients are never stored, so equality is structural.
template <class C>
class BasePoly {
 public:
  using coefficient_type = C;
  using ctraits = scalar_traits<C>;
  using Terms = std::map<Monomial, C>;

  BasePoly(std::size_t nvars, C zero) : nvars_(nvars), zero_(ctraits::zero_like(zero)) {}

  static BasePoly constant(std::size_t nvars, const C& c) {
    BasePoly p(nvars, c);
    p.add_term(Monomial::one(nvars), c);
    return p;
  }

  static BasePoly term(const Monomial& m, const C& c) {
    BasePoly p(m.nvars(), c);
    p.add_term(m, c);
    return p;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  const C& zero_coefficient() const noexcept { return zero_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  C coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? zero_ : it->second;
  }

  /// Total degree; -1 for zero.
  int degree() const {
    int d = -1;
    for (const auto& [m, _] : terms_) d = std::max(d, static_cast<int>(m.degree()));
    return d;
  }

  /// Largest degree within any one block of variables; -1 for zero.
  int block_degree(std::span<const std::size_t> blocks) const {
    int d = -1;
    for (const auto& [m, _] : terms_) {
      std::size_t first = 0;
      if (blocks.empty()) d = std::max(d, 0);
      for (std::size_t b : blocks) {
        d = std::max(d, static_cast<int>(m.block_degree(first, b)));
        first += b;
      }
    }
    return d;
  }

  void add_term(const Monomial& m, const C& c) {
    if (m.nvars() != nvars_)
      throw DimensionMismatch("monomial over " + std::to_string(m.nvars()) + " base variables added to a polynomial over " +
                              std::to_string(nvars_));
    if (ctraits::is_zero(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
      return;
    }
    it->second = C(it->second + c);
    if (ctraits::is_zero(it->second)) terms_.erase(it);
  }

  BasePoly& operator+=(const BasePoly& o) {
    require_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }

  BasePoly& operator-=(const BasePoly& o) {
    require_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, C(-c));
    return *this;
  }

  BasePoly operator-() const {
    BasePoly r(nvars_, zero_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, C(-c));
    return r;
  }

  friend BasePoly operator+(BasePoly a, const BasePoly& b) { return a += b; }
  friend BasePoly operator-(BasePoly a, const BasePoly& b) { return a -= b; }

  friend BasePoly operator*(const BasePoly& a, const BasePoly& b) {
    a.require_same(b);
    BasePoly r(a.nvars_, a.zero_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, C(ca * cb));
    return r;
  }

  /// Applies f to every coefficient.
  template <class F>
  BasePoly map_coefficients(F f) const {
    BasePoly r(nvars_, zero_);
    for (const auto& [m, c] : terms_) r.add_term(m, f(c));
    return r;
  }

  friend bool operator==(const BasePoly& a, const BasePoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  void require_same(const BasePoly& o) const {
    if (o.nvars_ != nvars_)
      throw DimensionMismatch("base polynomials over " + std::to_string(nvars_) + " and " + std::to_string(o.nvars_) +
                              " variables");
  }

  std::size_t nvars_;
  C zero_;
  Terms terms_;
};

/// `(1 + x) + 2*s0*s1`: coefficients in parentheses unless atomic, base
/// variables printed as s0, s1, ...
template <class C>
std::string to_string(const BasePoly<C>& p) {
  using ct = scalar_traits<C>;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < p.nvars(); ++i) names.push_back("s" + std::to_string(i));
  std::string s;
  for (const auto& [m, c] : p.terms()) {
    std::string coeff = ct::to_string(c);
    bool composite = !ct::is_atomic(c) && coeff.find_first_of("+-", 1) != std::string::npos;
    if (composite) coeff = "(" + coeff + ")";
    std::string term = m.is_one() ? coeff : coeff == "1" ? weil::to_string(m, names) : coeff + "*" + weil::to_string(m, names);
    s += s.empty() ? term : " + " + term;
  }
  return s.empty() ? "0" : s;
}

template <class C>
struct scalar_traits<BasePoly<C>> {
  using inner = scalar_traits<C>;
  using base_type = typename inner::base_type;
  static constexpr bool exact = inner::exact;

  static BasePoly<C> zero_like(const BasePoly<C>& x) { return BasePoly<C>(x.nvars(), x.zero_coefficient()); }
  static BasePoly<C> from_rational(const BasePoly<C>& proto, const Rational& q) {
    return BasePoly<C>::constant(proto.nvars(), inner::from_rational(proto.zero_coefficient(), q));
  }
  static BasePoly<C> from_base(const BasePoly<C>& proto, const base_type& b) {
    return BasePoly<C>::constant(proto.nvars(), inner::from_base(proto.zero_coefficient(), b));
  }
  static bool is_zero(const BasePoly<C>& x) { return x.is_zero(); }
  static BasePoly<C> scale(const BasePoly<C>& x, const StructureCoefficient& c) {
    return x.map_coefficients([&](const C& v) { return inner::scale(v, c); });
  }
  static BasePoly<C> scale(const BasePoly<C>& x, const Rational& q) {
    return x.map_coefficients([&](const C& v) { return inner::scale(v, q); });
  }
  static BasePoly<C> mul_base(const BasePoly<C>& x, const base_type& b) {
    return x.map_coefficients([&](const C& v) { return inner::mul_base(v, b); });
  }
  static std::optional<Rational> as_rational(const BasePoly<C>& x) {
    if (x.is_zero()) return Rational(0);
    if (x.terms().size() != 1 || !x.terms().begin()->first.is_one()) return std::nullopt;
    return inner::as_rational(x.terms().begin()->second);
  }
  static bool close(const BasePoly<C>& a, const BasePoly<C>& b, double, double) { return a == b; }
  static std::string to_string(const BasePoly<C>& x) { return weil::to_string(x); }
  static bool is_atomic(const BasePoly<C>& x) { return x.terms().size() <= 1 && inner::is_atomic(x.zero_coefficient()); }
};

}  // namespace weil

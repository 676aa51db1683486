#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "weil/monomial.hpp"
#include "weil/rational.hpp"

namespace weil {

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// The term map never stores a zero coefficient, so the zero polynomial is the
/// empty map and equality is structural.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational>;

  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t index);
  static Polynomial term(const Monomial& m, const Rational& c);

  std::size_t nvars() const noexcept { return nvars_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  Rational coefficient(const Monomial& m) const;
  Rational constant_term() const;

  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  /// Lowest total degree of a term; -1 for the zero polynomial.
  int low_degree() const;

  void add_term(const Monomial& m, const Rational& c);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  Polynomial operator-() const;

  /// Drops every term of total degree >= k.
  Polynomial truncated(unsigned k) const;

  /// Embeds into `nvars` variables, shifting variable i to i + offset.
  Polynomial reindexed(std::size_t nvars, std::size_t offset) const;

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  /// Untruncated product.
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void require_same_nvars(const Polynomial& other) const;

  std::size_t nvars_;
  Terms terms_;
};

/// Product with every monomial of degree >= k deleted.
Polynomial mul_trunc(const Polynomial& p, const Polynomial& q, unsigned k);

Polynomial pow_trunc(const Polynomial& p, unsigned e, unsigned k);

/// p(subs[0], ..., subs[n-1]) truncated at degree k. Every substitution must
/// be over `target_nvars` variables.
Polynomial compose_trunc(const Polynomial& p, std::span<const Polynomial> subs, std::size_t target_nvars,
                         unsigned k);

/// Parses the textual polynomial grammar: `+`/`-`-joined terms, each an
/// optional rational coefficient and `*`-separated powers `name^e`.
Polynomial parse_polynomial(std::string_view text, std::span<const std::string> variables);

/// Terms in ascending graded-lex order, e.g. `1 - x^2` or `1/2*x^2*y - 3*y^4`.
std::string to_string(const Polynomial& p, std::span<const std::string> names = {});

}  // namespace weil

#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "weil/polynomial.hpp"
#include "weil/reduction.hpp"
#include "weil/scalar.hpp"

namespace weil {

/// Textual presentation of a Weil algebra: variable names, relation strings
/// in the polynomial grammar, and the nilpotency order k (m^k is adjoined).
struct WeilPresentation {
  std::vector<std::string> variables;
  std::vector<std::string> relations;
  unsigned nilpotency = 1;
};

/// Reads the JSON record `{"variables": [...], "relations": [...],
/// "nilpotency": k}`. Throws ParseError.
WeilPresentation parse_presentation(std::string_view json_text);
WeilPresentation load_presentation(const std::string& path);
std::string to_json(const WeilPresentation& pres);

/// One entry of the product table: basis_i * basis_j contributes `coeff` to
/// basis_{index}.
struct ProductTerm {
  std::size_t index;
  StructureCoefficient coeff;
};

/// A Weil algebra Q[x_1..x_n] / (<generators> + m^k), stored with its
/// reduction basis, its quotient basis (non-pivot monomials of degree < k in
/// graded-lex order, starting with 1) and the resulting product table.
///
/// Copies share one immutable representation. Identity is structural: two
/// algebras are equal when their variable names, nilpotency order and reduced
/// ideal rows coincide.
class WeilAlgebra {
 public:
  /// Builds and validates. Throws ImproperIdeal when a generator has a
  /// nonzero constant term or the quotient collapses, DimensionMismatch when
  /// generators disagree with the variable list.
  WeilAlgebra(std::vector<std::string> variables, std::vector<Polynomial> generators,
              unsigned nilpotency_order);

  static WeilAlgebra from_presentation(const WeilPresentation& pres);

  /// The reals: no variables, nilpotency order 1, dimension 1.
  static WeilAlgebra reals();

  std::size_t nvars() const noexcept;
  const std::vector<std::string>& variables() const noexcept;
  const std::vector<Polynomial>& generators() const noexcept;
  unsigned nilpotency_order() const noexcept;
  const ReductionBasis& reduction() const noexcept;
  std::span<const Monomial> basis() const noexcept;
  std::size_t dimension() const noexcept;

  std::optional<std::size_t> basis_index(const Monomial& m) const;
  std::span<const ProductTerm> product(std::size_t i, std::size_t j) const;

  Polynomial normal_form(const Polynomial& p) const;
  /// Coordinates of normal_form(p) over the quotient basis.
  std::vector<Rational> coordinates(const Polynomial& p) const;
  Polynomial representative(std::span<const Rational> coords) const;

  /// Generators of the ideal including m^k: the presentation's generators
  /// followed by every monomial of degree exactly k.
  std::vector<Polynomial> ideal_generators() const;

  /// `dimension 2, basis [1, x]`
  std::string summary() const;
  /// Same pointer, a cheap sufficient test for equality.
  bool shares_representation(const WeilAlgebra& other) const noexcept { return data_ == other.data_; }

  friend bool operator==(const WeilAlgebra& a, const WeilAlgebra& b);

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

/// Named presets: `dual` = Q[x]/(x^2), `jet2` = Q[t]/(t^3),
/// `jet3` = Q[t]/(t^4), `d2` = Q[x,y]/(x^2, y^2, xy).
WeilAlgebra preset(std::string_view name);
std::vector<std::string> preset_names();
bool is_preset(std::string_view name);

/// Q[t]/(t^{order+1}), the algebra of order-`order` jets in one variable.
WeilAlgebra jet_algebra(unsigned order, std::string variable = "t");

}  // namespace weil

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "weil/base_poly.hpp"
#include "weil/jet.hpp"
#include "weil/prolong.hpp"
#include "weil/random.hpp"
#include "weil/report.hpp"
#include "weil/tensor.hpp"

namespace weil {

/// Element of C(R^n) (x) W in the polynomial fragment: a polynomial in the
/// base variables s0..s(n-1) with coefficients in W.
using FragmentPoly = BasePoly<Element<Rational>>;

/// An object C(R^n) (x) W.
///
/// The base variables are grouped into blocks, and the degree bound of a
/// carrier applies to each block separately. A plain object has one block;
/// a coproduct keeps the blocks of both summands, so its carrier is the
/// tensor product of theirs.
class DObject {
 public:
  DObject(std::size_t base_arity, WeilAlgebra weil);
  DObject(std::vector<std::size_t> blocks, WeilAlgebra weil);

  std::size_t base_arity() const noexcept { return base_arity_; }
  const WeilAlgebra& weil() const noexcept { return weil_; }
  const std::vector<std::size_t>& blocks() const noexcept { return blocks_; }

  FragmentPoly zero() const;
  FragmentPoly constant(const Element<Rational>& c) const;
  FragmentPoly constant(const Rational& q) const;
  /// The base variable s_i.
  FragmentPoly base_variable(std::size_t i) const;
  /// The Weil variable x_j as a constant polynomial.
  FragmentPoly weil_variable(std::size_t j) const;

  std::string to_string() const;
  friend bool operator==(const DObject& a, const DObject& b);

 private:
  std::size_t base_arity_;
  WeilAlgebra weil_;
  std::vector<std::size_t> blocks_;
};

/// (n + m, W (x) W'): base variables of C first, Weil variables as in
/// tensor(W, W').
DObject dobj_coproduct(const DObject& c1, const DObject& c2);

/// A value of J(X)(C): one fragment polynomial per coordinate of X.
struct JValue {
  std::vector<FragmentPoly> components;
  friend bool operator==(const JValue&, const JValue&) = default;
};

std::string to_string(const JValue& v);

/// J(X)(C) with base degree at most d per block, for X Euclidean or a
/// finite product of Euclidean spaces.
///
/// Coordinates are ordered component-major, then by base monomial, then by
/// Weil basis index.
class JSpace {
 public:
  JSpace(FragmentSpace x, DObject object, unsigned degree_bound);

  const FragmentSpace& space() const noexcept { return x_; }
  const DObject& object() const noexcept { return object_; }
  unsigned degree_bound() const noexcept { return d_; }
  std::size_t width() const noexcept { return x_.width(); }
  const std::vector<Monomial>& monomials() const noexcept { return monomials_; }
  std::size_t dimension() const noexcept { return width() * monomials_.size() * object_.weil().dimension(); }

  /// p * prod_b C(n_b + d, d) * dim W, computed without enumeration.
  static std::size_t dimension_formula(std::size_t p, std::span<const std::size_t> blocks, unsigned d,
                                       std::size_t weil_dimension);

  JValue zero() const;
  JValue basis_vector(std::size_t index) const;
  JValue from_coordinates(std::span<const Rational> coords) const;
  /// Throws DegreeOverflow when v has a term outside the carrier.
  std::vector<Rational> coordinates(const JValue& v) const;
  bool contains(const JValue& v) const;
  /// A sparse random element of the carrier.
  JValue random(Rng& rng) const;

 private:
  FragmentSpace x_;
  DObject object_;
  unsigned d_;
  std::vector<Monomial> monomials_;
};

/// J(phi) for a polynomial phi: substitutes the carrier into phi and
/// expands exactly. Degrees are not bounded; use JSpace::contains.
/// Throws FragmentViolation for non-polynomial phi.
JValue j_on_map(const SmoothMap& phi, const DObject& c, const JValue& v);

/// Random polynomial map R^arity -> R^coarity of degree below max_degree.
SmoothMap random_polynomial_map(std::size_t arity, std::size_t coarity, unsigned max_degree, Rng& rng);

/// The curried side C(R^m, C(R^n, X) (x) W) (x) W': a polynomial in the m
/// outer base variables whose coefficients are W' elements with scalars in
/// the inner fragment.
using CurriedPoly = BasePoly<Element<FragmentPoly>>;

struct CurriedValue {
  std::vector<CurriedPoly> components;
  friend bool operator==(const CurriedValue&, const CurriedValue&) = default;
};

/// Regrouping C(R^{n+m}, X) (x) (W (x) W') = C(R^m, C(R^n, X) (x) W) (x) W'
/// for X = R^p, with outer objects C1 = (n, W) and C2 = (m, W').
class CurryIso {
 public:
  CurryIso(std::size_t p, DObject c1, DObject c2, unsigned degree_bound);

  const DObject& inner() const noexcept { return c1_; }
  const DObject& outer() const noexcept { return c2_; }
  const DObject& joint() const noexcept { return joint_; }
  const JSpace& joint_space() const noexcept { return joint_space_; }
  const TensorProduct& tensor() const noexcept { return tp_; }

  /// Same count as the joint side, enumerated on the curried side.
  std::size_t curried_dimension() const;
  CurriedValue curried_basis_vector(std::size_t index) const;
  /// Throws DegreeOverflow outside the bounded carrier.
  std::vector<Rational> curried_coordinates(const CurriedValue& v) const;

  CurriedPoly zero_curried() const;
  CurriedPoly curry(const FragmentPoly& joint) const;
  FragmentPoly uncurry(const CurriedPoly& curried) const;
  CurriedValue curry(const JValue& v) const;
  JValue uncurry(const CurriedValue& v) const;

  /// J(phi) computed on the curried side.
  CurriedValue on_map(const SmoothMap& phi, const CurriedValue& v) const;

  /// Round trips on every basis vector of both sides and linearity on
  /// random combinations; together these make curry a bijection.
  SuiteReport verify(std::size_t samples, std::uint64_t seed) const;

 private:
  std::size_t p_;
  DObject c1_, c2_, joint_;
  TensorProduct tp_;
  unsigned d_;
  JSpace joint_space_;
  std::vector<Monomial> inner_monomials_, outer_monomials_;
};

/// J(X x Y) = J(X) x J(Y): the carrier split is a bijection commuting with
/// J of the projections and with J of random polynomial maps into X x Y.
SuiteReport check_j_product_law(const FragmentSpace& x, const FragmentSpace& y, const DObject& c, unsigned d,
                                std::size_t samples, std::uint64_t seed);

/// The currying step J(X)(C1 + C2) = J(X (x) C1)(C2): exhaustive bijection
/// on the bounded carriers, then naturality against J of random polynomial
/// maps X -> X.
SuiteReport check_j_prolongation_law(const FragmentSpace& x, const DObject& c1, const DObject& c2, unsigned d,
                                     std::size_t samples, std::uint64_t seed);

/// An arrow C -> C' given by the images of the generators: base_part[i] is
/// the image of s_i and weil_part[j] the image of x_j, both elements of the
/// target fragment. The images of x must annihilate every generator of the
/// ideal of W, including the power m^k.
class DMorphism {
 public:
  DMorphism(DObject source, DObject target, std::vector<FragmentPoly> base_part,
            std::vector<FragmentPoly> weil_part);

  static DMorphism identity(const DObject& c);

  const DObject& source() const noexcept { return source_; }
  const DObject& target() const noexcept { return target_; }
  const std::vector<FragmentPoly>& base_part() const noexcept { return base_part_; }
  const std::vector<FragmentPoly>& weil_part() const noexcept { return weil_part_; }

  /// The ring map C -> C' on a fragment element of the source.
  FragmentPoly apply(const FragmentPoly& v) const;
  JValue apply(const JValue& v) const;

  /// This arrow followed by `next`.
  DMorphism then(const DMorphism& next) const;

  std::string to_string() const;
  friend bool operator==(const DMorphism& a, const DMorphism& b);

 private:
  DObject source_, target_;
  std::vector<FragmentPoly> base_part_, weil_part_;
  std::vector<FragmentPoly> weil_basis_images_;  ///< image of each W basis monomial
};

/// The canonical injections C1 -> C1 + C2 and C2 -> C1 + C2.
std::pair<DMorphism, DMorphism> coproduct_injections(const DObject& c1, const DObject& c2);

/// The candidate action J(X)(C) -> J(X)(C') of an arrow, on bounded
/// carriers. Throws DegreeOverflow rather than truncating.
class InducedAction {
 public:
  InducedAction(const FragmentSpace& x, DMorphism rho, unsigned degree_bound);

  const JSpace& source() const noexcept { return source_; }
  const JSpace& target() const noexcept { return target_; }
  const DMorphism& morphism() const noexcept { return rho_; }

  JValue operator()(const JValue& v) const;

 private:
  DMorphism rho_;
  JSpace source_, target_;
};

/// A random Weil morphism W -> W'. Low-degree candidates first; the minimum
/// degree rises after repeated rejections, and the zero map is the fallback.
WeilMorphism random_weil_morphism(const WeilAlgebra& w, const WeilAlgebra& w2, Rng& rng);

/// A random arrow C -> C' that keeps bounded carriers bounded: base images
/// are affine in the target base variables with W' constants, Weil images
/// are constant in the base variables. Requires a single-block source.
DMorphism random_dmorphism(const DObject& source, const DObject& target, Rng& rng);

/// One identity-law case: a description of the first basis vector of
/// J(X)(C) that the identity arrow moves, or nullopt.
std::optional<std::string> identity_action_failure(const FragmentSpace& x, const DObject& c, unsigned d);

/// One composition-law case: draws C, C', C'' from `objects` and arrows
/// between them from `case_seed`, then compares both sides on a random
/// carrier element. Returns the counterexample verbatim, or nullopt.
std::optional<std::string> composition_failure(const FragmentSpace& x, std::span<const DObject> objects, unsigned d,
                                               std::uint64_t case_seed);

/// Probes functoriality of the candidate action in C on random composable
/// pairs drawn from `objects`: the identity acts as the identity on every
/// basis vector, and action(rho' o rho) = action(rho') o action(rho) on
/// random carrier elements. The outcome is "evidence-for" or
/// "counterexample", never a proof.
SuiteReport probe_c_functoriality(const FragmentSpace& x, std::span<const DObject> objects, unsigned d,
                                  std::size_t pairs, std::uint64_t seed);

}  // namespace weil

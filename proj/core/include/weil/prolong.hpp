#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "weil/jet.hpp"
#include "weil/morphism.hpp"
#include "weil/report.hpp"
#include "weil/tensor.hpp"

namespace weil {

/// The computable spaces: R^m, finite products, and prolongations X (x) W.
class FragmentSpace {
 public:
  enum class Kind { Euclidean, Product, Prolonged };

  static FragmentSpace euclidean(std::size_t m);
  static FragmentSpace product(std::vector<FragmentSpace> factors);
  /// The unnormalized node; prolong_space() is the functor.
  static FragmentSpace prolonged(FragmentSpace base, WeilAlgebra w);

  Kind kind() const noexcept;
  /// m for Euclidean(m).
  std::size_t euclidean_dimension() const;
  const std::vector<FragmentSpace>& factors() const;
  const FragmentSpace& base() const;
  const WeilAlgebra& algebra() const;

  /// Number of real coordinates of a point once every leaf is flattened:
  /// m for Euclidean(m), the sum over factors, m for Prolonged(R^m, W)
  /// (counted in W-valued coordinates).
  std::size_t width() const;

  std::string to_string() const;
  friend bool operator==(const FragmentSpace& a, const FragmentSpace& b);

 private:
  struct Node;
  explicit FragmentSpace(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// X (x) W in normal form: products distribute, R^m (x) W stays a leaf, and
/// (R^m (x) W1) (x) W2 becomes R^m (x) (W1 (x) W2).
FragmentSpace prolong_space(const FragmentSpace& x, const WeilAlgebra& w);

/// The normal form of a space: nested prolongations collapsed into tensors.
FragmentSpace normalize(const FragmentSpace& x);

/// A point of a normalized space. A leaf R^m (x) W carries m elements of W;
/// a bare R^m carries m elements of the reals; a product carries its parts.
template <class S>
struct WPoint {
  FragmentSpace space;
  std::vector<Element<S>> coords;
  std::vector<WPoint> parts;

  /// Leaf coordinates in order, products flattened.
  std::vector<Element<S>> flatten() const {
    if (space.kind() != FragmentSpace::Kind::Product) return coords;
    std::vector<Element<S>> out;
    for (const auto& p : parts) {
      auto f = p.flatten();
      out.insert(out.end(), f.begin(), f.end());
    }
    return out;
  }

  friend bool operator==(const WPoint& a, const WPoint& b) {
    return a.space == b.space && a.coords == b.coords && a.parts == b.parts;
  }
};

/// Rebuilds a structured point from flattened leaf coordinates.
template <class S>
WPoint<S> unflatten(const FragmentSpace& space, std::span<const Element<S>> flat) {
  if (flat.size() != space.width())
    throw ShapeMismatch("space " + space.to_string() + " has width " + std::to_string(space.width()) + ", got " +
                        std::to_string(flat.size()) + " coordinates");
  WPoint<S> p{space, {}, {}};
  if (space.kind() != FragmentSpace::Kind::Product) {
    p.coords.assign(flat.begin(), flat.end());
    return p;
  }
  std::size_t offset = 0;
  for (const auto& f : space.factors()) {
    p.parts.push_back(unflatten<S>(f, flat.subspan(offset, f.width())));
    offset += f.width();
  }
  return p;
}

/// X (x) psi : X (x) W1 -> X (x) W2 for psi : W1 -> W2, acting leafwise.
/// On a leaf R^m (x) (W0 (x) W1) it is id_{W0} (x) psi.
class CrossAction {
 public:
  CrossAction(FragmentSpace x, WeilMorphism psi);

  const FragmentSpace& source_space() const noexcept { return source_; }
  const FragmentSpace& target_space() const noexcept { return target_; }

  template <class S>
  WPoint<S> operator()(const WPoint<S>& p) const {
    if (!(p.space == source_))
      throw ShapeMismatch("point of " + p.space.to_string() + " given to a cross action on " + source_.to_string());
    std::size_t leaf = 0;
    return apply_rec(p, leaf);
  }

 private:
  template <class S>
  WPoint<S> apply_rec(const WPoint<S>& p, std::size_t& leaf) const {
    if (p.space.kind() == FragmentSpace::Kind::Product) {
      std::vector<WPoint<S>> parts;
      std::vector<FragmentSpace> spaces;
      for (const auto& part : p.parts) {
        parts.push_back(apply_rec(part, leaf));
        spaces.push_back(parts.back().space);
      }
      return WPoint<S>{FragmentSpace::product(std::move(spaces)), {}, std::move(parts)};
    }
    const WeilMorphism& m = leaf_maps_.at(leaf);
    WPoint<S> out{leaf_targets_.at(leaf), {}, {}};
    ++leaf;
    for (const auto& c : p.coords) out.coords.push_back(m.apply(c));
    return out;
  }

  FragmentSpace source_;
  FragmentSpace target_;
  WeilMorphism psi_;
  std::vector<WeilMorphism> leaf_maps_;  ///< one per leaf in traversal order
  std::vector<FragmentSpace> leaf_targets_;
};

/// phi (x) W on flattened points of (R^n (x) W): the lift of phi.
template <class S>
WPoint<S> lift_point(const SmoothMap& phi, const WeilAlgebra& w, const WPoint<S>& p) {
  auto flat = p.flatten();
  auto out = taylor_lift<S>(phi, w, flat);
  return unflatten<S>(prolong_space(FragmentSpace::euclidean(phi.coarity()), w), out);
}

/// The class of f : R^n -> R^m in (R^m) (x) W: its lift at the generic point
/// (x_1, ..., x_n). Exact; throws ScalarModeError when a primitive has no
/// exact expansion at the origin and DomainError outside its domain.
std::vector<Element<Rational>> class_of(const SmoothMap& f, const WeilAlgebra& w);
/// Real-mode class, for maps whose Taylor coefficients at 0 are irrational.
std::vector<Element<double>> class_of_real(const SmoothMap& f, const WeilAlgebra& w);

struct Equivalence {
  bool equivalent = true;
  bool exact = true;                      ///< decided in exact mode
  std::optional<std::size_t> component;   ///< first differing output
  bool base_point_differs = false;        ///< augmentations disagree there
  std::string difference;                 ///< normal form of class(f) - class(g)

  explicit operator bool() const noexcept { return equivalent; }
};

/// f == g mod I: equal classes componentwise. Falls back to real mode with
/// the given tolerance only when exact expansion is impossible.
Equivalence equiv_mod(const SmoothMap& f, const SmoothMap& g, const WeilAlgebra& w, Tolerance tol = {});

/// Checks (phi (x) W2) o (R^n (x) psi) = (R^m (x) psi) o (phi (x) W1) on
/// random points. Exact unless phi needs real mode.
SuiteReport check_naturality(const SmoothMap& phi, const WeilMorphism& psi, std::size_t samples,
                             std::uint64_t seed, Tolerance tol = {});

/// The expression sum c * t^mu of a polynomial.
Expr polynomial_expr(const Polynomial& p);

/// Checks that classes of maps into X x Y pair componentwise and that
/// equivalence is componentwise, on `samples` perturbations g of f with
/// planted differences of degree below and at the nilpotency order.
SuiteReport check_product_preservation(const FragmentSpace& x, const FragmentSpace& y, const WeilAlgebra& w,
                                       const SmoothMap& f, std::size_t samples, std::uint64_t seed);

/// The isomorphism (R^m (x) W1) (x) W2 = R^m (x) (W1 (x) W2). A point of the
/// left side is a W1-element with W2-valued coordinates.
class AssocIso {
 public:
  using Nested = Element<Element<Rational>>;

  AssocIso(std::size_t m, WeilAlgebra w1, WeilAlgebra w2);

  std::size_t width() const noexcept { return m_; }
  const TensorProduct& tensor() const noexcept { return tp_; }
  const WeilAlgebra& left() const noexcept { return tp_.left; }
  const WeilAlgebra& right() const noexcept { return tp_.right; }

  FragmentSpace nested_space() const;
  FragmentSpace tensor_space() const;

  Element<Rational> to_tensor(const Nested& a) const;
  Nested from_tensor(const Element<Rational>& a) const;
  std::vector<Element<Rational>> to_tensor(std::span<const Nested> point) const;
  std::vector<Nested> from_tensor(std::span<const Element<Rational>> point) const;

  /// The nested element with a single 1 at W1 basis i, W2 basis j.
  Nested nested_basis(std::size_t i, std::size_t j) const;
  Nested nested_zero() const;

  /// Exhaustive bijectivity on basis vectors, then additivity,
  /// multiplicativity and augmentation on random pairs, then lift coherence
  /// for every expression in `exprs` (each of arity <= m).
  SuiteReport verify(std::span<const Expr> exprs, std::size_t samples, std::uint64_t seed) const;

 private:
  std::size_t m_;
  TensorProduct tp_;
};

}  // namespace weil

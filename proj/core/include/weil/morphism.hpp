#pragma once

#include <cstddef>
#include <vector>

#include "weil/algebra.hpp"
#include "weil/element.hpp"
#include "weil/linalg.hpp"
#include "weil/tensor.hpp"

namespace weil {

/// An arrow W1 -> W2 of Weil algebras, represented by a polynomial map
/// psibar : R^m -> R^n (n = W1.nvars, m = W2.nvars) that fixes the origin and
/// pulls the ideal of W1 back into the ideal of W2.
///
/// The action on elements substitutes psibar into a representative and
/// reduces in W2; it is precomputed as a dim(W2) x dim(W1) matrix.
class WeilMorphism {
 public:
  /// Validates both conditions. Throws DimensionMismatch, BasePointViolation,
  /// or IdealViolation naming the first generator whose pullback is not in
  /// the target ideal. Generators of m^k are checked alongside the
  /// presentation's own generators.
  WeilMorphism(WeilAlgebra source, WeilAlgebra target, std::vector<Polynomial> psibar);

  static WeilMorphism identity(const WeilAlgebra& w);
  /// psibar = 0: every element goes to its augmentation.
  static WeilMorphism zero(const WeilAlgebra& source, const WeilAlgebra& target);

  const WeilAlgebra& source() const noexcept { return source_; }
  const WeilAlgebra& target() const noexcept { return target_; }
  const std::vector<Polynomial>& psibar() const noexcept { return psibar_; }
  /// Column c holds the target coordinates of the image of source basis c.
  const RationalMatrix& action() const noexcept { return action_; }

  template <class S>
  Element<S> apply(const Element<S>& a) const {
    if (!(a.algebra() == source_)) throw AlgebraMismatch("element does not belong to the morphism's source");
    using traits = scalar_traits<S>;
    const S zero = traits::zero_like(a[0]);
    std::vector<S> out(target_.dimension(), zero);
    for (std::size_t c = 0; c < source_.dimension(); ++c) {
      if (traits::is_zero(a[c])) continue;
      for (std::size_t r = 0; r < target_.dimension(); ++r) {
        const Rational& m = action_[r][c];
        if (m == 0) continue;
        out[r] = S(out[r] + (m == 1 ? a[c] : traits::scale(a[c], m)));
      }
    }
    return Element<S>(target_, std::move(out));
  }

  template <class S>
  Element<S> operator()(const Element<S>& a) const {
    return apply(a);
  }

  /// Equal source, target and truncated psibar.
  bool same_representative(const WeilMorphism& other) const;
  /// Equal source, target and action on every basis element.
  bool same_action(const WeilMorphism& other) const;

 private:
  WeilAlgebra source_;
  WeilAlgebra target_;
  std::vector<Polynomial> psibar_;
  RationalMatrix action_;
};

/// psi : W1 -> W2 followed by phi : W2 -> W3. The representative is
/// psibar o phibar truncated at W3's nilpotency order.
WeilMorphism compose_morphism(const WeilMorphism& psi, const WeilMorphism& phi);

/// phi (x) psi : A (x) B -> A' (x) B', acting on each block of variables.
WeilMorphism tensor_morphism(const WeilMorphism& phi, const WeilMorphism& psi);

template <class S>
Element<S> apply_morphism(const WeilMorphism& psi, const Element<S>& a) {
  return psi.apply(a);
}

}  // namespace weil

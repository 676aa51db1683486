#pragma once

#include <cstddef>
#include <vector>

#include "weil/algebra.hpp"
#include "weil/element.hpp"
#include "weil/linalg.hpp"

namespace weil {

/// W1 (x) W2 with the bookkeeping that identifies it with pairs of basis
/// elements.
///
/// Variables are W1's followed by W2's (a clashing W2 name gets a `_2`
/// suffix). The presentation is both generator lists plus the block powers
/// m1^k1 and m2^k2, with nilpotency order k1 + k2 - 1. `pair_to_tensor`
/// has one column per pair (i, j), indexed i * dim(W2) + j, holding the
/// tensor coordinates of basis_i(W1) * basis_j(W2).
struct TensorProduct {
  WeilAlgebra algebra;
  WeilAlgebra left;
  WeilAlgebra right;
  RationalMatrix pair_to_tensor;
  RationalMatrix tensor_to_pair;
  bool basis_is_product = false;  ///< pair_to_tensor is a permutation matrix

  std::size_t pair_index(std::size_t i, std::size_t j) const { return i * right.dimension() + j; }

  /// a (x) b for exact elements.
  Element<Rational> embed(const Element<Rational>& a, const Element<Rational>& b) const;
};

TensorProduct tensor_product(const WeilAlgebra& left, const WeilAlgebra& right);

inline WeilAlgebra tensor(const WeilAlgebra& left, const WeilAlgebra& right) {
  return tensor_product(left, right).algebra;
}

}  // namespace weil

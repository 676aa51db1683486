#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "weil/polynomial.hpp"

namespace weil {

/// Reduced row-echelon basis of (<generators> + m^k) / m^k inside the
/// truncated ring Q[x_1..x_n] / m^k.
///
/// Each row is keyed by its pivot, the graded-lex smallest monomial it
/// contains; the pivot coefficient is 1 and no other row mentions it. Picking
/// the smallest monomial makes the constant monomial a pivot exactly when the
/// ideal is improper.
class ReductionBasis {
 public:
  ReductionBasis(std::size_t nvars, unsigned truncation_order);

  static ReductionBasis build(std::span<const Polynomial> generators, std::size_t nvars,
                              unsigned truncation_order);

  std::size_t nvars() const noexcept { return nvars_; }
  unsigned truncation_order() const noexcept { return k_; }
  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }

  const std::map<Monomial, Polynomial>& rows() const noexcept { return rows_; }
  std::vector<Monomial> pivots() const;
  bool is_pivot(const Monomial& m) const { return rows_.contains(m); }

  /// Canonical representative: truncate at k, then eliminate every pivot.
  Polynomial normal_form(const Polynomial& p) const;

  /// Reduces `candidate` and, if something survives, adds it as a new row.
  /// Returns true when the span grew.
  bool insert(Polynomial candidate);

  friend bool operator==(const ReductionBasis&, const ReductionBasis&) = default;

 private:
  Polynomial reduce(Polynomial p) const;

  std::size_t nvars_;
  unsigned k_;
  std::map<Monomial, Polynomial> rows_;
};

inline ReductionBasis build_reduction_basis(std::span<const Polynomial> generators, std::size_t nvars,
                                            unsigned k) {
  return ReductionBasis::build(generators, nvars, k);
}

inline Polynomial normal_form(const Polynomial& p, const ReductionBasis& basis) {
  return basis.normal_form(p);
}

}  // namespace weil

#include "weil/reduction.hpp"

#include "weil/errors.hpp"

namespace weil {

ReductionBasis::ReductionBasis(std::size_t nvars, unsigned truncation_order)
    : nvars_(nvars), k_(truncation_order) {
  if (truncation_order == 0) throw DimensionMismatch("truncation order must be positive");
}

ReductionBasis ReductionBasis::build(std::span<const Polynomial> generators, std::size_t nvars,
                                     unsigned truncation_order) {
  ReductionBasis basis(nvars, truncation_order);
  for (const auto& g : generators) {
    if (g.nvars() != nvars)
      throw DimensionMismatch("generator over " + std::to_string(g.nvars()) +
                              " variables, expected " + std::to_string(nvars));
    Polynomial gt = g.truncated(truncation_order);
    if (gt.is_zero()) continue;
    const auto low = static_cast<unsigned>(gt.low_degree());
    // g * mu for every monomial mu that leaves something below degree k
    for (const auto& mu : monomials_below(nvars, truncation_order - low)) {
      Polynomial shifted(nvars);
      for (const auto& [m, c] : gt.terms()) {
        Monomial prod = m * mu;
        if (prod.degree() < truncation_order) shifted.add_term(prod, c);
      }
      basis.insert(std::move(shifted));
    }
  }
  return basis;
}

std::vector<Monomial> ReductionBasis::pivots() const {
  std::vector<Monomial> out;
  out.reserve(rows_.size());
  for (const auto& [pivot, row] : rows_) out.push_back(pivot);
  return out;
}

Polynomial ReductionBasis::reduce(Polynomial p) const {
  // Rows hold no foreign pivots, so subtracting one row never reintroduces
  // another pivot and a single sweep suffices.
  std::vector<std::pair<Monomial, Rational>> hits;
  for (const auto& [m, c] : p.terms())
    if (rows_.contains(m)) hits.emplace_back(m, c);
  for (const auto& [m, c] : hits) p -= rows_.at(m) * c;
  return p;
}

Polynomial ReductionBasis::normal_form(const Polynomial& p) const {
  if (p.nvars() != nvars_)
    throw DimensionMismatch("normal form of a polynomial over " + std::to_string(p.nvars()) +
                            " variables in a basis over " + std::to_string(nvars_));
  return reduce(p.truncated(k_));
}

bool ReductionBasis::insert(Polynomial candidate) {
  Polynomial r = reduce(candidate.truncated(k_));
  if (r.is_zero()) return false;
  const Monomial pivot = r.terms().begin()->first;
  const Rational lead = r.terms().begin()->second;
  r *= Rational(1) / lead;
  for (auto& [other_pivot, row] : rows_) {
    Rational c = row.coefficient(pivot);
    if (c != 0) row -= r * c;
  }
  rows_.emplace(pivot, std::move(r));
  return true;
}

}  // namespace weil

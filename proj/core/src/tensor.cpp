#include "weil/tensor.hpp"

#include <algorithm>
#include <set>

#include "weil/errors.hpp"

namespace weil {

namespace {

std::vector<std::string> disjoint_names(const WeilAlgebra& left, const WeilAlgebra& right) {
  std::vector<std::string> names = left.variables();
  std::set<std::string> used(names.begin(), names.end());
  for (const auto& v : right.variables()) {
    std::string candidate = v;
    while (used.contains(candidate)) candidate += "_2";
    used.insert(candidate);
    names.push_back(candidate);
  }
  return names;
}

}  // namespace

TensorProduct tensor_product(const WeilAlgebra& left, const WeilAlgebra& right) {
  const std::size_t n1 = left.nvars();
  const std::size_t n2 = right.nvars();
  const std::size_t n = n1 + n2;
  const unsigned k1 = left.nilpotency_order();
  const unsigned k2 = right.nilpotency_order();

  std::vector<Polynomial> gens;
  for (const auto& g : left.generators()) gens.push_back(g.reindexed(n, 0));
  for (const auto& g : right.generators()) gens.push_back(g.reindexed(n, n1));
  if (n1 > 0)
    for (const auto& m : monomials_of_degree(n1, k1)) gens.push_back(Polynomial::term(m.reindexed(n, 0), 1));
  if (n2 > 0)
    for (const auto& m : monomials_of_degree(n2, k2)) gens.push_back(Polynomial::term(m.reindexed(n, n1), 1));

  WeilAlgebra algebra(disjoint_names(left, right), std::move(gens), k1 + k2 - 1);

  const std::size_t d1 = left.dimension();
  const std::size_t d2 = right.dimension();
  if (algebra.dimension() != d1 * d2)
    throw std::logic_error("tensor dimension " + std::to_string(algebra.dimension()) + " != " +
                           std::to_string(d1) + " * " + std::to_string(d2));

  RationalMatrix pair_to_tensor(algebra.dimension(), std::vector<Rational>(d1 * d2));
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d2; ++j) {
      Monomial m = left.basis()[i].concat(right.basis()[j]);
      auto coords = algebra.coordinates(Polynomial::term(m, 1));
      for (std::size_t r = 0; r < coords.size(); ++r) pair_to_tensor[r][i * d2 + j] = coords[r];
    }
  auto inverse = invert(pair_to_tensor);
  if (!inverse) throw std::logic_error("tensor basis bookkeeping is singular");

  TensorProduct tp{algebra, left, right, std::move(pair_to_tensor), std::move(*inverse), false};
  tp.basis_is_product = is_permutation(tp.pair_to_tensor);
  return tp;
}

Element<Rational> TensorProduct::embed(const Element<Rational>& a, const Element<Rational>& b) const {
  if (!(a.algebra() == left) || !(b.algebra() == right))
    throw AlgebraMismatch("tensor embedding operands do not match the factors");
  std::vector<Rational> pair(left.dimension() * right.dimension());
  for (std::size_t i = 0; i < left.dimension(); ++i)
    for (std::size_t j = 0; j < right.dimension(); ++j) pair[pair_index(i, j)] = a[i] * b[j];
  return Element<Rational>(algebra, weil::apply(pair_to_tensor, pair));
}

}  // namespace weil

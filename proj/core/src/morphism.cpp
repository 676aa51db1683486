#include "weil/morphism.hpp"

#include "weil/errors.hpp"

namespace weil {

WeilMorphism::WeilMorphism(WeilAlgebra source, WeilAlgebra target, std::vector<Polynomial> psibar)
    : source_(std::move(source)), target_(std::move(target)) {
  const std::size_t n = source_.nvars();
  const std::size_t m = target_.nvars();
  const unsigned k = target_.nilpotency_order();
  if (psibar.size() != n)
    throw DimensionMismatch("psibar has " + std::to_string(psibar.size()) + " components, source has " +
                            std::to_string(n) + " variables");
  for (std::size_t i = 0; i < n; ++i) {
    if (psibar[i].nvars() != m)
      throw DimensionMismatch("psibar component " + std::to_string(i) + " is over " +
                              std::to_string(psibar[i].nvars()) + " variables, target has " +
                              std::to_string(m));
    if (psibar[i].constant_term() != 0) throw BasePointViolation(i, psibar[i].constant_term().get_str());
    psibar_.push_back(psibar[i].truncated(k));
  }

  for (const auto& g : source_.ideal_generators()) {
    Polynomial pulled = target_.normal_form(compose_trunc(g, psibar_, m, k));
    if (!pulled.is_zero())
      throw IdealViolation(to_string(g, source_.variables()), to_string(pulled, target_.variables()));
  }

  action_.assign(target_.dimension(), std::vector<Rational>(source_.dimension()));
  for (std::size_t c = 0; c < source_.dimension(); ++c) {
    auto coords = target_.coordinates(compose_trunc(Polynomial::term(source_.basis()[c], 1), psibar_, m, k));
    for (std::size_t r = 0; r < coords.size(); ++r) action_[r][c] = coords[r];
  }
}

WeilMorphism WeilMorphism::identity(const WeilAlgebra& w) {
  std::vector<Polynomial> psibar;
  for (std::size_t i = 0; i < w.nvars(); ++i) psibar.push_back(Polynomial::variable(w.nvars(), i));
  return WeilMorphism(w, w, std::move(psibar));
}

WeilMorphism WeilMorphism::zero(const WeilAlgebra& source, const WeilAlgebra& target) {
  return WeilMorphism(source, target, std::vector<Polynomial>(source.nvars(), Polynomial(target.nvars())));
}

bool WeilMorphism::same_representative(const WeilMorphism& other) const {
  return source_ == other.source_ && target_ == other.target_ && psibar_ == other.psibar_;
}

bool WeilMorphism::same_action(const WeilMorphism& other) const {
  return source_ == other.source_ && target_ == other.target_ && action_ == other.action_;
}

WeilMorphism compose_morphism(const WeilMorphism& psi, const WeilMorphism& phi) {
  if (!(psi.target() == phi.source()))
    throw AlgebraMismatch("cannot compose: the first morphism's target is not the second's source");
  const unsigned k = phi.target().nilpotency_order();
  std::vector<Polynomial> composite;
  composite.reserve(psi.psibar().size());
  for (const auto& component : psi.psibar()) composite.push_back(compose_trunc(component, phi.psibar(), phi.target().nvars(), k));
  return WeilMorphism(psi.source(), phi.target(), std::move(composite));
}

WeilMorphism tensor_morphism(const WeilMorphism& phi, const WeilMorphism& psi) {
  WeilAlgebra source = tensor(phi.source(), psi.source());
  WeilAlgebra target = tensor(phi.target(), psi.target());
  const std::size_t m = target.nvars();
  std::vector<Polynomial> psibar;
  for (const auto& c : phi.psibar()) psibar.push_back(c.reindexed(m, 0));
  for (const auto& c : psi.psibar()) psibar.push_back(c.reindexed(m, phi.target().nvars()));
  return WeilMorphism(std::move(source), std::move(target), std::move(psibar));
}

}  // namespace weil

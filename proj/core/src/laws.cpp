#include "weil/laws.hpp"

#include <algorithm>

#include "weil/errors.hpp"
#include "weil/jet.hpp"
#include "weil/linalg.hpp"
#include "weil/prolong.hpp"
#include "weil/tensor.hpp"

namespace weil {

namespace {

using E = Element<Rational>;

std::string show(std::initializer_list<std::pair<const char*, const E*>> named) {
  std::string s;
  for (const auto& [name, e] : named) s += (s.empty() ? "" : ", ") + std::string(name) + " = " + to_string(*e);
  return s;
}

E one(const WeilAlgebra& w) { return E::constant(w, Rational(1)); }

Rational evaluate_univariate(const Polynomial& p, const Rational& r) {
  Rational sum = 0;
  for (const auto& [m, c] : p.terms()) {
    Rational term = c;
    for (unsigned e = 0; e < m[0]; ++e) term *= r;
    sum += term;
  }
  return sum;
}

Polynomial derivative(const Polynomial& p) {
  Polynomial out(1);
  for (const auto& [m, c] : p.terms())
    if (m[0] > 0) out.add_term(Monomial::variable(1, 0, m[0] - 1), c * m[0]);
  return out;
}

SmoothMap perturbed(const SmoothMap& f, std::size_t component, const Polynomial& delta) {
  std::vector<Expr> outputs = f.outputs();
  outputs[component] = outputs[component] + polynomial_expr(delta);
  return SmoothMap(f.arity(), std::move(outputs));
}

}  // namespace

WeilPresentation random_presentation(Rng& rng) {
  static const std::vector<std::string> names = {"x", "y", "z"};
  WeilPresentation pres;
  const auto n = static_cast<std::size_t>(rng.range(1, 3));
  pres.variables.assign(names.begin(), names.begin() + static_cast<std::ptrdiff_t>(n));
  // Keeps the number of monomials below degree k at most 30.
  const unsigned max_k = n == 1 ? 8 : n == 2 ? 6 : 4;
  pres.nilpotency = static_cast<unsigned>(rng.range(2, max_k));
  const unsigned k = pres.nilpotency;
  if (k <= 2) return pres;
  const auto relations = rng.range(0, 2);
  for (std::int64_t r = 0; r < relations; ++r) {
    Polynomial rel(n);
    rel.add_term(rng.pick(monomials_of_degree(n, static_cast<unsigned>(rng.range(2, k - 1)))), 1);
    if (rng.chance(50)) {
      // Binomial relation: a second monomial of degree >= 2.
      rel.add_term(rng.pick(monomials_of_degree(n, static_cast<unsigned>(rng.range(2, k - 1)))), rng.nonzero_rational());
    }
    if (!rel.is_zero()) pres.relations.push_back(to_string(rel, pres.variables));
  }
  return pres;
}

SuiteReport check_ring_laws(const WeilAlgebra& w, std::size_t triples, std::uint64_t seed) {
  SuiteReport report{"ring_laws", 0, {}, std::nullopt};
  const E zero = E::zero(w), unit = one(w);
  const unsigned k = w.nilpotency_order();
  for (std::size_t s = 0; s < triples; ++s) {
    ++report.cases;
    const std::uint64_t case_seed = mix_seed(seed, "ring_laws", s);
    Rng rng(case_seed);
    const E a = random_element(w, rng), b = random_element(w, rng), c = random_element(w, rng);
    const std::string ctx = show({{"a", &a}, {"b", &b}, {"c", &c}}) + " in " + w.summary();

    auto law = [&](bool holds, const char* name) {
      if (!holds) report.fail(case_seed, std::string(name) + " fails for " + ctx);
      return holds;
    };
    law((a * b) * c == a * (b * c), "associativity") && law(a * b == b * a, "commutativity") &&
        law(a * (b + c) == a * b + a * c, "distributivity") && law(unit * a == a && a + zero == a, "identities") &&
        law(a - a == zero && (a + b) - b == a, "additive inverse") &&
        law(augmentation(a * b) == augmentation(a) * augmentation(b) &&
                augmentation(a + b) == augmentation(a) + augmentation(b) && augmentation(unit) == 1,
            "augmentation homomorphism") &&
        [&] {
          // Any k nilpotent factors multiply to zero.
          E product = unit;
          for (unsigned i = 0; i < k; ++i) product = product * random_nilpotent(w, rng);
          E power = unit;
          const E n = random_nilpotent(w, rng);
          for (unsigned i = 0; i < k; ++i) power = power * n;
          return law(product.is_zero() && power.is_zero(), "nilpotency of the maximal ideal");
        }();
  }
  return report;
}

SuiteReport check_morphism_laws(const WeilMorphism& phi, const WeilMorphism& psi, std::size_t samples,
                                std::uint64_t seed) {
  SuiteReport report{"morphism_laws", 0, {}, std::nullopt};
  const WeilAlgebra& w1 = phi.source();
  const WeilAlgebra& w2 = phi.target();
  const WeilMorphism composite = compose_morphism(phi, psi);
  const WeilMorphism phi_psi = tensor_morphism(phi, psi);
  const TensorProduct before = tensor_product(w1, w2);
  const TensorProduct after = tensor_product(w2, psi.target());

  ++report.cases;
  if (!compose_morphism(WeilMorphism::identity(w1), phi).same_action(phi) ||
      !compose_morphism(phi, WeilMorphism::identity(w2)).same_action(phi))
    report.fail(mix_seed(seed, "morphism_laws/identity", 0), "identity morphisms are not neutral for phi");

  for (std::size_t s = 0; s < samples; ++s) {
    ++report.cases;
    const std::uint64_t case_seed = mix_seed(seed, "morphism_laws", s);
    Rng rng(case_seed);
    const E a = random_element(w1, rng), b = random_element(w1, rng), c = random_element(w2, rng);
    const std::string ctx = show({{"a", &a}, {"b", &b}, {"c", &c}});
    if (!(phi(a * b) == phi(a) * phi(b)) || !(phi(a + b) == phi(a) + phi(b)) || !(phi(one(w1)) == one(w2)))
      report.fail(case_seed, "phi is not a ring map at " + ctx);
    else if (augmentation(phi(a)) != augmentation(a))
      report.fail(case_seed, "phi does not preserve augmentation at " + ctx);
    else if (!(composite(a) == psi(phi(a))))
      report.fail(case_seed, "(psi o phi)(a) = " + to_string(composite(a)) + " but psi(phi(a)) = " +
                                 to_string(psi(phi(a))) + " at " + ctx);
    else if (!(phi_psi(before.embed(a, c)) == after.embed(phi(a), psi(c))))
      report.fail(case_seed, "phi (x) psi does not act blockwise at " + ctx);
  }
  return report;
}

SuiteReport check_tensor_laws(const WeilAlgebra& w1, const WeilAlgebra& w2, std::size_t samples,
                              std::uint64_t seed) {
  SuiteReport report{"tensor_laws", 0, {}, std::nullopt};
  const TensorProduct tp = tensor_product(w1, w2);
  ++report.cases;
  if (tp.algebra.dimension() != w1.dimension() * w2.dimension())
    report.fail(mix_seed(seed, "tensor_laws/dimension", 0),
                "dim(W1 (x) W2) = " + std::to_string(tp.algebra.dimension()) + " for factors of dimension " +
                    std::to_string(w1.dimension()) + " and " + std::to_string(w2.dimension()));
  ++report.cases;
  if (!(tp.embed(one(w1), one(w2)) == one(tp.algebra)))
    report.fail(mix_seed(seed, "tensor_laws/unit", 0), "1 (x) 1 is not the unit");

  for (std::size_t s = 0; s < samples; ++s) {
    ++report.cases;
    const std::uint64_t case_seed = mix_seed(seed, "tensor_laws", s);
    Rng rng(case_seed);
    const E a = random_element(w1, rng), a2 = random_element(w1, rng);
    const E b = random_element(w2, rng), b2 = random_element(w2, rng);
    const Rational q = rng.small_rational();
    const std::string ctx = show({{"a", &a}, {"a'", &a2}, {"b", &b}, {"b'", &b2}});
    if (!(tp.embed(a + a2, b) == tp.embed(a, b) + tp.embed(a2, b)) ||
        !(tp.embed(a, b + b2) == tp.embed(a, b) + tp.embed(a, b2)) ||
        !(tp.embed(a.scaled(q), b) == tp.embed(a, b).scaled(q)))
      report.fail(case_seed, "a (x) b is not bilinear at " + ctx);
    else if (!(tp.embed(a, b) * tp.embed(a2, b2) == tp.embed(a * a2, b * b2)))
      report.fail(case_seed, "a (x) b is not multiplicative at " + ctx);
    else {
      const E t = random_element(tp.algebra, rng);
      const std::vector<Rational> coords(t.coords().begin(), t.coords().end());
      if (weil::apply(tp.pair_to_tensor, weil::apply(tp.tensor_to_pair, coords)) != coords)
        report.fail(case_seed, "pair coordinates do not round-trip for " + to_string(t));
    }
  }
  return report;
}

SuiteReport check_lift_functoriality(const WeilAlgebra& w, const SmoothMap& f, const SmoothMap& g,
                                     std::size_t samples, std::uint64_t seed) {
  SuiteReport report{"lift_functoriality", 0, {}, std::nullopt};
  if (g.arity() != f.coarity())
    throw DimensionMismatch("cannot compose " + g.to_string() + " after " + f.to_string());
  const bool polynomial = f.is_polynomial() && g.is_polynomial();
  const SmoothMap gf = g.after(f);
  const SmoothMap id = SmoothMap::identity(f.arity());

  for (std::size_t s = 0; s < samples; ++s) {
    ++report.cases;
    const std::uint64_t case_seed = mix_seed(seed, "lift_functoriality", s);
    Rng rng(case_seed);
    std::vector<E> point;
    for (std::size_t i = 0; i < f.arity(); ++i)
      point.push_back(polynomial ? random_element(w, rng) : random_nilpotent(w, rng));
    try {
      const auto lhs = taylor_lift<Rational>(gf, w, point);
      const auto mid = taylor_lift<Rational>(f, w, point);
      const auto rhs = taylor_lift<Rational>(g, w, mid);
      if (lhs != rhs) {
        std::string l, r;
        for (std::size_t i = 0; i < lhs.size(); ++i) {
          l += (i ? ", " : "") + to_string(lhs[i]);
          r += (i ? ", " : "") + to_string(rhs[i]);
        }
        report.fail(case_seed, "lift of " + g.to_string() + " o " + f.to_string() + " gives (" + l +
                                   ") but the composite of lifts gives (" + r + ")");
      } else if (taylor_lift<Rational>(id, w, point) != point) {
        report.fail(case_seed, "identity lift moves a point of " + w.summary());
      }
    } catch (const ScalarModeError&) {
      // No exact series at this base point; the case says nothing.
      --report.cases;
    } catch (const DomainError&) {
      --report.cases;
    }
  }
  return report;
}

SuiteReport check_equiv_laws(const WeilAlgebra& w, const SmoothMap& f, std::size_t samples, std::uint64_t seed) {
  SuiteReport report{"equiv_laws", 0, {}, std::nullopt};
  if (f.arity() != w.nvars())
    throw DimensionMismatch("classes in " + w.summary() + " need maps of arity " + std::to_string(w.nvars()));
  if (f.coarity() == 0) return report;
  const auto ideal = w.ideal_generators();

  ++report.cases;
  if (!equiv_mod(f, f, w).equivalent)
    report.fail(mix_seed(seed, "equiv_laws/reflexive", 0), f.to_string() + " is not equivalent to itself");

  for (std::size_t s = 0; s < samples; ++s) {
    ++report.cases;
    const std::uint64_t case_seed = mix_seed(seed, "equiv_laws", s);
    Rng rng(case_seed);
    const std::size_t j = rng.below(f.coarity());

    // An ideal element is invisible.
    const Polynomial h = random_polynomial(w.nvars(), 3, 2, rng) * rng.pick(ideal);
    const SmoothMap same = perturbed(f, j, h);
    const Equivalence e1 = equiv_mod(f, same, w), e2 = equiv_mod(same, f, w);
    if (!e1.equivalent || !e2.equivalent) {
      report.fail(case_seed, "adding " + to_string(h) + " to component " + std::to_string(j) + " of " + f.to_string() +
                                 " changed its class: " + e1.difference);
      continue;
    }

    // A surviving basis monomial is visible, in that component only.
    const std::size_t b = rng.below(w.dimension());
    const Polynomial delta = Polynomial::term(w.basis()[b], rng.nonzero_rational());
    const SmoothMap other = perturbed(f, j, delta);
    const Equivalence e3 = equiv_mod(f, other, w), e4 = equiv_mod(other, f, w);
    if (e3.equivalent || e4.equivalent || e3.component != j || e3.base_point_differs != (b == 0))
      report.fail(case_seed, "adding " + to_string(delta) + " to component " + std::to_string(j) + " of " +
                                 f.to_string() + " was not detected as a change of class");
  }
  return report;
}

SuiteReport check_polynomial_derivatives(const Polynomial& p, unsigned order, std::size_t samples,
                                         std::uint64_t seed) {
  SuiteReport report{"derivative", 0, {}, std::nullopt};
  if (p.nvars() != 1) throw DimensionMismatch("derivative checks take polynomials in one variable");
  const WeilAlgebra w = jet_algebra(order);
  const Expr e = polynomial_expr(p);
  for (std::size_t s = 0; s < samples; ++s) {
    ++report.cases;
    const std::uint64_t case_seed = mix_seed(seed, "derivative", s);
    Rng rng(case_seed);
    const Rational r = rng.small_rational();
    std::vector<E> point = {E::constant(w, r) + E::variable(w, 0)};
    const E lift = taylor_lift<Rational>(e, w, point);
    Polynomial dp = p;
    for (unsigned j = 0; j <= order; ++j) {
      const auto index = w.basis_index(Monomial::variable(1, 0, j));
      const Rational got = index ? lift[*index] * factorial(j) : Rational(0);
      const Rational want = evaluate_univariate(dp, r);
      if (got != want) {
        report.fail(case_seed, "derivative " + std::to_string(j) + " of " + to_string(p) + " at " + r.get_str() +
                                   " is " + want.get_str() + ", jet lift gives " + got.get_str());
        break;
      }
      dp = derivative(dp);
    }
  }
  return report;
}

}  // namespace weil

#include <gtest/gtest.h>

#include "support/printers.hpp"
#include "weil/cahiers.hpp"
#include "weil/errors.hpp"

using namespace weil;

namespace {

const FragmentSpace R1 = FragmentSpace::euclidean(1);

/// Monomials with every block degree <= d, counted by brute force over the
/// exponent box, independently of the library enumeration.
std::size_t count_bounded(const std::vector<std::size_t>& blocks, unsigned d) {
  std::size_t total = 1;
  for (std::size_t n : blocks) {
    std::size_t count = 0;
    std::vector<unsigned> e(n, 0);
    while (true) {
      unsigned sum = 0;
      for (unsigned v : e) sum += v;
      if (sum <= d) ++count;
      std::size_t i = 0;
      while (i < n && ++e[i] > d) e[i++] = 0;
      if (i == n) break;
    }
    total *= n == 0 ? 1 : count;
  }
  return total;
}

FragmentPoly poly(const DObject& c, std::vector<std::pair<std::vector<unsigned>, Element<Rational>>> terms) {
  FragmentPoly p = c.zero();
  for (auto& [e, coef] : terms) p.add_term(Monomial(e), coef);
  return p;
}

Element<Rational> real(const Rational& q) { return Element<Rational>::constant(WeilAlgebra::reals(), q); }

}  // namespace

TEST(DObject, CoproductAddsArityAndTensorsAlgebras) {
  DObject c(1, preset("dual"));
  DObject joint = dobj_coproduct(c, c);
  EXPECT_EQ(joint.base_arity(), 2u);
  EXPECT_EQ(joint.weil().dimension(), 4u);
  EXPECT_EQ(joint.blocks(), (std::vector<std::size_t>{1, 1}));

  DObject unit(0, WeilAlgebra::reals());
  EXPECT_EQ(dobj_coproduct(unit, c).base_arity(), 1u);
  EXPECT_EQ(dobj_coproduct(unit, c).weil().dimension(), 2u);

  DObject big = dobj_coproduct(DObject(2, preset("d2")), DObject(3, preset("jet2")));
  EXPECT_EQ(big.base_arity(), 5u);
  EXPECT_EQ(big.weil().dimension(), 9u);
}

TEST(EvalJ, SpecExampleDimensions) {
  EXPECT_EQ(JSpace(R1, DObject(1, preset("dual")), 2).dimension(), 6u);
  EXPECT_EQ(JSpace(FragmentSpace::euclidean(2), DObject(0, preset("jet3")), 5).dimension(), 8u);
  EXPECT_EQ(JSpace(R1, DObject(2, WeilAlgebra::reals()), 1).dimension(), 3u);
}

TEST(EvalJ, DimensionFormulaMatchesEnumerationOnSmallParameters) {
  for (const char* name : {"dual", "jet2", "jet3", "d2"})
    for (std::size_t p = 0; p <= 2; ++p)
      for (std::size_t n = 0; n <= 3; ++n)
        for (unsigned d = 0; d <= 3; ++d) {
          const WeilAlgebra w = preset(name);
          JSpace j(FragmentSpace::euclidean(p), DObject(n, w), d);
          const std::vector<std::size_t> blocks = n ? std::vector<std::size_t>{n} : std::vector<std::size_t>{};
          EXPECT_EQ(j.dimension(), JSpace::dimension_formula(p, blocks, d, w.dimension()));
          EXPECT_EQ(j.dimension(), p * count_bounded(blocks, d) * w.dimension()) << name << " n=" << n << " d=" << d;
          // Basis vectors are independent and round-trip through coordinates.
          for (std::size_t k = 0; k < j.dimension(); ++k) {
            auto c = j.coordinates(j.basis_vector(k));
            for (std::size_t i = 0; i < c.size(); ++i) ASSERT_EQ(c[i], Rational(i == k ? 1 : 0));
            ASSERT_EQ(j.from_coordinates(c), j.basis_vector(k));
          }
        }
}

TEST(EvalJ, RejectsProlongedSpacesAndOverflow) {
  EXPECT_THROW(JSpace(prolong_space(R1, preset("dual")), DObject(1, preset("dual")), 1), ShapeMismatch);
  JSpace j(R1, DObject(1, WeilAlgebra::reals()), 1);
  JValue v{{poly(j.object(), {{{2}, real(1)}})}};
  EXPECT_FALSE(j.contains(v));
  EXPECT_THROW(j.coordinates(v), DegreeOverflow);
}

TEST(JOnMap, ProductOfCarriers) {
  DObject c(1, preset("dual"));
  const auto eps = Element<Rational>::variable(c.weil(), 0);
  JValue v{{c.base_variable(0), c.constant(eps)}};
  JValue out = j_on_map(parse_smooth_map("t0*t1", 2), c, v);
  ASSERT_EQ(out.components.size(), 1u);
  EXPECT_EQ(out.components[0], poly(c, {{{1}, eps}}));
  EXPECT_EQ(j_on_map(SmoothMap::identity(2), c, v), v);
}

TEST(JOnMap, RejectsNonPolynomialMaps) {
  DObject c(1, preset("dual"));
  JValue v{{c.base_variable(0)}};
  EXPECT_THROW(j_on_map(parse_smooth_map("sin(t)"), c, v), FragmentViolation);
  EXPECT_THROW(j_on_map(parse_smooth_map("1/t"), c, v), FragmentViolation);
}

TEST(JOnMap, IsFunctorialOnRandomPolynomialPairs) {
  DObject c(2, preset("d2"));
  JSpace j(FragmentSpace::euclidean(2), c, 2);
  for (std::uint64_t s = 0; s < 40; ++s) {
    Rng rng(mix_seed(11, "j-functor", s));
    SmoothMap inner = random_polynomial_map(2, 3, 3, rng);
    SmoothMap outer = random_polynomial_map(3, 2, 3, rng);
    JValue v = j.random(rng);
    EXPECT_EQ(j_on_map(outer.after(inner), c, v), j_on_map(outer, c, j_on_map(inner, c, v)))
        << outer.to_string() << " after " << inner.to_string();
  }
}

TEST(CurryIso, BilinearRegrouping) {
  const WeilAlgebra r = WeilAlgebra::reals();
  CurryIso iso(1, DObject(1, r), DObject(1, r), 1);
  // a + b s + c t + d s t with (a, b, c, d) = (1, 2, 3, 4); s is the inner
  // variable, t the outer one.
  FragmentPoly joint = iso.joint().zero();
  const WeilAlgebra& jw = iso.joint().weil();
  auto jc = [&](int q) { return Element<Rational>::constant(jw, Rational(q)); };
  joint.add_term(Monomial({0, 0}), jc(1));
  joint.add_term(Monomial({1, 0}), jc(2));
  joint.add_term(Monomial({0, 1}), jc(3));
  joint.add_term(Monomial({1, 1}), jc(4));
  CurriedPoly curried = iso.curry(joint);
  ASSERT_EQ(curried.terms().size(), 2u);
  const FragmentPoly constant_part = curried.coefficient(Monomial({0}))[0];
  const FragmentPoly t_part = curried.coefficient(Monomial({1}))[0];
  DObject inner(1, r);
  EXPECT_EQ(constant_part, poly(inner, {{{0}, real(1)}, {{1}, real(2)}}));
  EXPECT_EQ(t_part, poly(inner, {{{0}, real(3)}, {{1}, real(4)}}));
  EXPECT_EQ(iso.uncurry(curried), joint);
}

TEST(CurryIso, TrivialOuterObjectIsTheIdentity) {
  CurryIso iso(2, DObject(1, preset("jet2")), DObject(0, WeilAlgebra::reals()), 2);
  EXPECT_EQ(iso.curried_dimension(), JSpace(FragmentSpace::euclidean(2), DObject(1, preset("jet2")), 2).dimension());
  for (std::size_t k = 0; k < iso.joint_space().dimension(); ++k) {
    auto c = iso.curried_coordinates(iso.curry(iso.joint_space().basis_vector(k)));
    for (std::size_t i = 0; i < c.size(); ++i) ASSERT_EQ(c[i], Rational(i == k ? 1 : 0));
  }
}

TEST(CurryIso, DualByDualDegreeTwoHasDimension36) {
  CurryIso iso(1, DObject(1, preset("dual")), DObject(1, preset("dual")), 2);
  EXPECT_EQ(iso.joint_space().dimension(), 36u);
  EXPECT_EQ(iso.curried_dimension(), 36u);
  SuiteReport r = iso.verify(10, 5);
  EXPECT_TRUE(r.passed()) << r.witnesses.front().detail;
  EXPECT_EQ(r.cases, 1u + 36u + 36u + 10u);
}

TEST(CurryIso, NonProductTensorBasis) {
  // jet2 (x) d2 reduces to a basis that is not the product basis.
  CurryIso iso(1, DObject(2, preset("jet2")), DObject(1, preset("d2")), 1);
  SuiteReport r = iso.verify(10, 9);
  EXPECT_TRUE(r.passed()) << (r.passed() ? "" : r.witnesses.front().detail);
}

TEST(JProductLaw, SpecExamples) {
  DObject c(1, preset("dual"));
  EXPECT_EQ(JSpace(FragmentSpace::product({R1, R1}), c, 1).dimension(), 8u);
  SuiteReport r = check_j_product_law(R1, R1, c, 1, 20, 3);
  EXPECT_TRUE(r.passed()) << (r.passed() ? "" : r.witnesses.front().detail);
  SuiteReport point = check_j_product_law(R1, FragmentSpace::euclidean(0), c, 2, 10, 4);
  EXPECT_TRUE(point.passed());
  SuiteReport nested = check_j_product_law(FragmentSpace::product({R1, FragmentSpace::euclidean(2)}), R1,
                                           DObject(2, preset("d2")), 1, 10, 6);
  EXPECT_TRUE(nested.passed()) << (nested.passed() ? "" : nested.witnesses.front().detail);
}

TEST(JProlongationLaw, SpecExamples) {
  DObject dual(1, preset("dual"));
  SuiteReport r = check_j_prolongation_law(R1, dual, dual, 2, 20, 7);
  EXPECT_TRUE(r.passed()) << (r.passed() ? "" : r.witnesses.front().detail);
  SuiteReport trivial = check_j_prolongation_law(FragmentSpace::euclidean(2), DObject(0, WeilAlgebra::reals()),
                                                 DObject(1, preset("jet2")), 2, 10, 8);
  EXPECT_TRUE(trivial.passed());
}

TEST(DMorphism, RejectsImagesThatMissTheIdeal) {
  DObject src(0, preset("dual"));
  DObject dst(1, WeilAlgebra::reals());
  // x -> s does not square to zero.
  EXPECT_THROW(DMorphism(src, dst, {}, {dst.base_variable(0)}), IdealViolation);
  EXPECT_THROW(DMorphism(src, dst, {dst.base_variable(0)}, {dst.zero()}), DimensionMismatch);
  EXPECT_NO_THROW(DMorphism(src, dst, {}, {dst.zero()}));
}

TEST(DMorphism, IdentityActsAsIdentityOnEveryBasisVector) {
  for (const char* name : {"dual", "jet3", "d2"}) {
    DObject c(2, preset(name));
    InducedAction id(FragmentSpace::euclidean(2), DMorphism::identity(c), 2);
    for (std::size_t k = 0; k < id.source().dimension(); ++k) {
      JValue e = id.source().basis_vector(k);
      ASSERT_EQ(id(e), e);
    }
  }
}

TEST(DMorphism, SquaringSubstitution) {
  DObject c(1, WeilAlgebra::reals());
  FragmentPoly t2 = poly(c, {{{2}, real(1)}});
  DMorphism rho(c, c, {t2}, {});
  JValue v{{poly(c, {{{0}, real(3)}, {{1}, real(5)}})}};
  InducedAction act(R1, rho, 2);
  EXPECT_EQ(act(v), (JValue{{poly(c, {{{0}, real(3)}, {{2}, real(5)}})}}));
  // At degree bound 1 the square of the base variable leaves the carrier.
  EXPECT_THROW(InducedAction(R1, rho, 1)(v), DegreeOverflow);
}

TEST(DMorphism, CoproductInjectionsAreValid) {
  DObject a(1, preset("dual")), b(2, preset("d2"));
  auto [i1, i2] = coproduct_injections(a, b);
  EXPECT_EQ(i1.target(), dobj_coproduct(a, b));
  FragmentPoly eps = a.weil_variable(0);
  // The image of the first factor's variable squares to zero in the joint object.
  EXPECT_TRUE((i1.apply(eps) * i1.apply(eps)).is_zero());
  EXPECT_FALSE(i2.apply(b.base_variable(1)).is_zero());
}

TEST(DMorphism, CompositionStaysValid) {
  std::vector<DObject> objects = {DObject(1, preset("dual")), DObject(2, preset("d2")), DObject(1, preset("jet3")),
                                  DObject(0, preset("jet2")), DObject(1, WeilAlgebra::reals())};
  for (std::uint64_t s = 0; s < 60; ++s) {
    Rng rng(mix_seed(21, "compose", s));
    const DObject& a = objects[rng.below(objects.size())];
    const DObject& b = objects[rng.below(objects.size())];
    const DObject& c = objects[rng.below(objects.size())];
    DMorphism f = random_dmorphism(a, b, rng);
    DMorphism g = random_dmorphism(b, c, rng);
    EXPECT_NO_THROW(f.then(g)) << f.to_string() << " then " << g.to_string();
    EXPECT_EQ(f.then(DMorphism::identity(b)), f);
    EXPECT_EQ(DMorphism::identity(a).then(f), f);
  }
}

TEST(CFunctoriality, ProbeReportsEvidence) {
  std::vector<DObject> objects = {DObject(1, preset("dual")), DObject(2, preset("d2")), DObject(1, preset("jet2")),
                                  DObject(0, preset("dual"))};
  SuiteReport r = probe_c_functoriality(FragmentSpace::euclidean(2), objects, 2, 100, 13);
  EXPECT_TRUE(r.passed()) << (r.passed() ? "" : r.witnesses.front().detail);
  ASSERT_TRUE(r.outcome.has_value());
  EXPECT_EQ(*r.outcome, "evidence-for");
  EXPECT_EQ(r.cases, 104u);
}

TEST(RandomWeilMorphism, AlwaysValid) {
  std::vector<std::string> names = preset_names();
  for (std::uint64_t s = 0; s < 80; ++s) {
    Rng rng(mix_seed(5, "psi", s));
    WeilAlgebra a = preset(names[rng.below(names.size())]);
    WeilAlgebra b = preset(names[rng.below(names.size())]);
    EXPECT_NO_THROW(WeilMorphism(a, b, random_weil_morphism(a, b, rng).psibar()));
  }
}

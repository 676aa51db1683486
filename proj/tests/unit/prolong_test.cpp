#include <gtest/gtest.h>

#include <cmath>

#include "support/printers.hpp"
#include "support/symbolic.hpp"
#include "weil/errors.hpp"
#include "weil/prolong.hpp"
#include "weil/random.hpp"

using namespace weil;

namespace {

WeilAlgebra algebra(std::vector<std::string> vars, std::vector<std::string> rels, unsigned k) {
  return WeilAlgebra::from_presentation({std::move(vars), std::move(rels), k});
}

Element<Rational> el(const WeilAlgebra& w, const std::string& text) {
  return Element<Rational>::from_polynomial(w, parse_polynomial(text, w.variables()));
}

std::vector<Element<Rational>> els(const WeilAlgebra& w, std::vector<std::string> texts) {
  std::vector<Element<Rational>> out;
  for (const auto& t : texts) out.push_back(el(w, t));
  return out;
}

}  // namespace

TEST(ExprParser, GrammarAndErrors) {
  EXPECT_EQ(parse_expr("t^2 + 3*t").to_string(), "t0^2 + 3*t0");
  EXPECT_EQ(parse_expr("x*y").arity_hint(), 2u);
  EXPECT_EQ(parse_expr("2.5").value(), Rational(5, 2));
  EXPECT_TRUE(parse_expr("(t + 1)^3 / 4").is_polynomial());
  EXPECT_FALSE(parse_expr("1/t").is_polynomial());
  EXPECT_FALSE(parse_expr("sin(t)").is_polynomial());
  EXPECT_THROW(parse_expr("tan(t)"), UnknownVariable);
  EXPECT_THROW(parse_expr("t +"), ParseError);
  EXPECT_THROW(parse_expr("t^x"), ParseError);
  auto f = parse_smooth_map("(t, t^2 + t^3)");
  EXPECT_EQ(f.arity(), 1u);
  EXPECT_EQ(f.coarity(), 2u);
  EXPECT_EQ(parse_smooth_map("(t + 1)^2").coarity(), 1u);
  EXPECT_THROW(SmoothMap(1, {parse_expr("t1")}), DimensionMismatch);
}

TEST(TaylorLift, SquareOnDualNumbers) {
  auto w = preset("dual");
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    Rational a = rng.small_rational(), b = rng.small_rational();
    std::vector<Element<Rational>> pt = {Element<Rational>(w, {a, b})};
    auto out = taylor_lift<Rational>(parse_expr("t^2"), w, pt);
    EXPECT_EQ(out, Element<Rational>(w, {a * a, 2 * a * b}));
  }
}

TEST(TaylorLift, SineSeriesIsExactAtZero) {
  auto w = algebra({"e"}, {"e^4"}, 4);
  std::vector<Element<Rational>> pt = {el(w, "e")};
  EXPECT_EQ(taylor_lift<Rational>(parse_expr("sin(t)"), w, pt), el(w, "e - 1/6*e^3"));
}

TEST(TaylorLift, IdentityMapFixesPoints) {
  Rng rng(4);
  for (const auto& name : preset_names()) {
    auto w = preset(name);
    std::vector<Element<Rational>> pt = {random_element(w, rng), random_element(w, rng)};
    EXPECT_EQ(taylor_lift<Rational>(SmoothMap::identity(2), w, pt), pt);
  }
}

TEST(TaylorLift, DomainAndModeErrors) {
  auto w = preset("dual");
  std::vector<Element<Rational>> zero = {el(w, "x")};
  EXPECT_THROW(taylor_lift<Rational>(parse_expr("log(t)"), w, zero), DomainError);
  EXPECT_THROW(taylor_lift<Rational>(parse_expr("1/t"), w, zero), DomainError);
  EXPECT_THROW(taylor_lift<Rational>(parse_expr("sqrt(t)"), w, zero), DomainError);
  std::vector<Element<Rational>> one = {el(w, "1 + x")};
  EXPECT_THROW(taylor_lift<Rational>(parse_expr("sin(t)"), w, one), ScalarModeError);
  EXPECT_EQ(taylor_lift<Rational>(parse_expr("log(t)"), w, one), el(w, "x"));
  std::vector<Element<Rational>> four = {el(w, "4 + x")};
  EXPECT_EQ(taylor_lift<Rational>(parse_expr("sqrt(t)"), w, four), el(w, "2 + 1/4*x"));
  EXPECT_EQ(taylor_lift<Rational>(parse_expr("1/t"), w, four), el(w, "1/4 - 1/16*x"));
}

TEST(TaylorLift, DualCoefficientMatchesOracles) {
  auto w = preset("dual");
  for (const auto& entry : oracle::corpus()) {
    SCOPED_TRACE(entry.text);
    Expr f = parse_expr(entry.text);
    std::vector<Element<double>> pt = {Element<double>(w, {entry.base, 1.0})};
    auto lifted = taylor_lift<double>(f, w, pt);
    EXPECT_TRUE(oracle::close(lifted[0], oracle::eval1(f, entry.base), 1e-12));
    double symbolic = oracle::eval1(oracle::differentiate(f), entry.base);
    EXPECT_TRUE(oracle::close(lifted[1], symbolic, 1e-12)) << lifted[1] << " vs " << symbolic;
    EXPECT_TRUE(oracle::close(lifted[1], oracle::central_difference(f, entry.base), 1e-6));
  }
}

TEST(TaylorLift, JetCoefficientsMatchSymbolicDerivatives) {
  for (unsigned k = 1; k <= 4; ++k) {
    auto w = jet_algebra(k);
    for (const auto& entry : oracle::corpus()) {
      SCOPED_TRACE(entry.text + " order " + std::to_string(k));
      Expr f = parse_expr(entry.text);
      std::vector<double> c(w.dimension(), 0.0);
      c[0] = entry.base;
      c[1] = 1.0;
      std::vector<Element<double>> pt = {Element<double>(w, c)};
      auto lifted = taylor_lift<double>(f, w, pt);
      double fact = 1.0;
      for (unsigned j = 0; j <= k; ++j) {
        if (j) fact *= j;
        double expected = oracle::eval1(oracle::nth_derivative(f, j), entry.base) / fact;
        EXPECT_TRUE(oracle::close(lifted[j], expected, 1e-9, 1e-12)) << j << ": " << lifted[j] << " vs " << expected;
      }
    }
  }
}

TEST(TaylorLift, FunctorialOnComposites) {
  Rng rng(8);
  auto w = preset("d2");
  auto f = parse_smooth_map("(t0*t1 + 1, t0 - t1^2)");
  auto g = parse_smooth_map("(t0^3 - 2*t1, t0*t1)");
  for (int i = 0; i < 30; ++i) {
    std::vector<Element<Rational>> pt = {random_element(w, rng), random_element(w, rng)};
    auto once = taylor_lift<Rational>(g.after(f), w, pt);
    auto inner = taylor_lift<Rational>(f, w, pt);
    EXPECT_EQ(once, taylor_lift<Rational>(g, w, inner));
  }
  // Real mode through transcendental primitives.
  auto h = parse_smooth_map("(exp(t0) + sin(t1), log(2 + t0^2))");
  auto jet = jet_algebra(3);
  for (int i = 0; i < 10; ++i) {
    std::vector<Element<double>> pt = {to_double(random_element(jet, rng)), to_double(random_element(jet, rng))};
    auto once = taylor_lift<double>(h.after(h), jet, pt);
    auto twice = taylor_lift<double>(h, jet, taylor_lift<double>(h, jet, pt));
    for (std::size_t c = 0; c < 2; ++c) EXPECT_TRUE(once[c].close_to(twice[c]));
  }
}

TEST(ClassOf, Examples) {
  auto w = jet_algebra(2);
  EXPECT_EQ(class_of(parse_smooth_map("(t, t^2 + t^3)"), w), els(w, {"t", "t^2"}));
  EXPECT_EQ(class_of(SmoothMap::constant(1, {Rational(7)}), w), els(w, {"7"}));
  EXPECT_EQ(class_of(parse_smooth_map("exp(t)"), w), els(w, {"1 + t + 1/2*t^2"}));
  EXPECT_THROW(class_of(parse_smooth_map("log(t)"), w), DomainError);
}

TEST(EquivMod, Examples) {
  auto w = jet_algebra(2);
  EXPECT_TRUE(equiv_mod(parse_smooth_map("(t, t^2)"), parse_smooth_map("(t, t^2 + t^3)"), w));
  auto e = equiv_mod(SmoothMap::constant(1, {Rational(0)}), SmoothMap::constant(1, {Rational(1)}), w);
  EXPECT_FALSE(e);
  EXPECT_TRUE(e.base_point_differs);
  EXPECT_EQ(e.component, 0u);
  EXPECT_EQ(e.difference, "-1");
  EXPECT_TRUE(equiv_mod(parse_smooth_map("sin(t)"), parse_smooth_map("t"), preset("dual")));
  auto f = equiv_mod(parse_smooth_map("(t, sin(t))"), parse_smooth_map("(t, t)"), w);
  EXPECT_TRUE(f);
  auto g = equiv_mod(parse_smooth_map("(t, cos(t))"), parse_smooth_map("(t, 1)"), w);
  EXPECT_FALSE(g);
  EXPECT_EQ(g.component, 1u);
  EXPECT_FALSE(g.base_point_differs);
  EXPECT_EQ(g.difference, "-1/2*t^2");
  // Irrational Taylor coefficients fall back to real mode.
  auto h = equiv_mod(parse_smooth_map("sin(t + 1)"), parse_smooth_map("sin(1) + cos(1)*t"), preset("dual"));
  EXPECT_TRUE(h);
  EXPECT_FALSE(h.exact);
}

TEST(EquivMod, EquivalenceRelationAndCongruence) {
  auto w = preset("jet2");
  Rng rng(21);
  const auto phi = parse_smooth_map("t0^3 - 2*t0 + exp(t0 - t0)");
  for (int i = 0; i < 40; ++i) {
    auto base = random_polynomial(1, 5, 4, rng);
    auto f = SmoothMap(1, {polynomial_expr(base)});
    auto g = SmoothMap(1, {polynomial_expr(base + random_polynomial(1, 5, 1, rng) * Rational(rng.below(2)))});
    auto h = SmoothMap(1, {polynomial_expr(base + Polynomial::term(Monomial::variable(1, 0, 3), 2))});
    EXPECT_TRUE(equiv_mod(f, f, w));
    EXPECT_EQ(bool(equiv_mod(f, g, w)), bool(equiv_mod(g, f, w)));
    if (equiv_mod(f, g, w) && equiv_mod(g, h, w)) {
      EXPECT_TRUE(equiv_mod(f, h, w));
    }
    if (equiv_mod(f, g, w)) {
      EXPECT_TRUE(equiv_mod(phi.after(f), phi.after(g), w));
    }
    EXPECT_EQ(bool(equiv_mod(f, g, w)), class_of(f, w) == class_of(g, w));
  }
}

TEST(Spaces, ProlongationNormalForms) {
  auto dual = preset("dual");
  auto r3 = FragmentSpace::euclidean(3);
  EXPECT_EQ(prolong_space(r3, dual), FragmentSpace::prolonged(r3, dual));
  auto r = FragmentSpace::euclidean(1);
  EXPECT_EQ(prolong_space(FragmentSpace::product({r, r}), dual),
            FragmentSpace::product({prolong_space(r, dual), prolong_space(r, dual)}));
  auto jet = preset("jet2");
  EXPECT_EQ(prolong_space(prolong_space(r, dual), jet), FragmentSpace::prolonged(r, tensor(dual, jet)));
  EXPECT_EQ(prolong_space(r, dual).width(), 1u);
}

TEST(CrossAction, Examples) {
  auto dual = preset("dual");
  auto w2 = algebra({"y"}, {"y^5"}, 5);
  auto r1 = FragmentSpace::euclidean(1);
  Rng rng(6);

  CrossAction id(r1, WeilMorphism::identity(dual));
  auto p = unflatten<Rational>(id.source_space(), std::vector{random_element(dual, rng)});
  EXPECT_EQ(id(p), p);

  CrossAction aug(r1, WeilMorphism::zero(dual, w2));
  auto q = aug(unflatten<Rational>(aug.source_space(), els(dual, {"3 + 4*x"})));
  EXPECT_EQ(q.coords, els(w2, {"3"}));

  WeilMorphism cube(dual, w2, {parse_polynomial("y^3", w2.variables())});
  CrossAction on_plane(FragmentSpace::euclidean(2), cube);
  auto r = on_plane(unflatten<Rational>(on_plane.source_space(), els(dual, {"1 + 2*x", "3 + 4*x"})));
  EXPECT_EQ(r.coords, els(w2, {"1 + 2*y^3", "3 + 4*y^3"}));
  EXPECT_EQ(r.space, on_plane.target_space());
}

TEST(CrossAction, NestedLeavesUseTheTensorMorphism) {
  auto dual = preset("dual");
  auto w2 = algebra({"y"}, {"y^5"}, 5);
  WeilMorphism cube(dual, w2, {parse_polynomial("y^3", w2.variables())});
  auto x = FragmentSpace::prolonged(FragmentSpace::euclidean(1), preset("jet2"));
  CrossAction act(x, cube);
  auto src = act.source_space().algebra();
  auto tgt = act.target_space().algebra();
  auto p = unflatten<Rational>(act.source_space(), std::vector{el(src, "1 + t + x + t*x")});
  EXPECT_EQ(act(p).coords.front(), el(tgt, "1 + t + y^3 + t*y^3"));
}

TEST(Naturality, Examples) {
  auto dual = preset("dual");
  auto w2 = algebra({"y"}, {"y^5"}, 5);
  WeilMorphism cube(dual, w2, {parse_polynomial("y^3", w2.variables())});
  auto r = check_naturality(parse_smooth_map("t^2"), cube, 100, 1);
  EXPECT_EQ(r.cases, 100u);
  EXPECT_TRUE(r.passed());
  EXPECT_TRUE(check_naturality(SmoothMap::identity(2), cube, 20, 2).passed());
  EXPECT_TRUE(check_naturality(parse_smooth_map("(t0*t1, t0 - t1)"), WeilMorphism::identity(preset("d2")), 20, 3).passed());
  auto real = check_naturality(parse_smooth_map("(sin(t0) * exp(t1), log(t0 + t1))"), tensor_morphism(cube, cube), 10, 4);
  EXPECT_TRUE(real.passed());
  EXPECT_GT(real.cases, 0u);
}

TEST(ProductPreservation, Examples) {
  auto w = jet_algebra(2);
  auto r = FragmentSpace::euclidean(1);
  EXPECT_EQ(class_of(parse_smooth_map("(t^2, t^3)"), w), els(w, {"t^2", "0"}));
  EXPECT_TRUE(check_product_preservation(r, r, w, SmoothMap::constant(1, {Rational(2), Rational(-1)}), 20, 1).passed());
  auto report = check_product_preservation(r, r, w, parse_smooth_map("(t^2, t^3)"), 50, 2);
  EXPECT_EQ(report.cases, 51u);
  EXPECT_TRUE(report.passed());
  auto d2 = preset("d2");
  auto plane = FragmentSpace::euclidean(2);
  EXPECT_TRUE(check_product_preservation(plane, r, d2, parse_smooth_map("(t0 + t1^2, exp(t1), t0*t1 - 1)"), 50, 3).passed());
}

TEST(AssocIso, DualDualBasis) {
  AssocIso iso(1, preset("dual"), preset("dual"));
  EXPECT_EQ(iso.tensor().algebra.dimension(), 4u);
  EXPECT_EQ(iso.to_tensor(iso.nested_basis(1, 1)), el(iso.tensor().algebra, "x*x_2"));
  EXPECT_EQ(iso.to_tensor(iso.nested_basis(0, 1)), el(iso.tensor().algebra, "x_2"));
  EXPECT_EQ(prolong_space(FragmentSpace::prolonged(FragmentSpace::euclidean(1), preset("dual")), preset("dual")),
            iso.tensor_space());
}

TEST(AssocIso, UnitLawAndCubeCoherence) {
  AssocIso unit(2, preset("jet2"), WeilAlgebra::reals());
  EXPECT_EQ(unit.tensor().pair_to_tensor, identity_matrix(3));
  EXPECT_TRUE(unit.verify(std::vector{parse_expr("t0*t1")}, 10, 1).passed());

  AssocIso iso(1, preset("dual"), preset("dual"));
  const auto& t = iso.tensor().algebra;
  // a + b x + c y: the xy coefficient of t^3 is 6 a b c.
  std::vector<Element<Rational>> pt = {el(t, "2 + 3*x + 5*x_2")};
  auto direct = taylor_lift<Rational>(parse_expr("t^3"), t, pt);
  EXPECT_EQ(direct, el(t, "8 + 36*x + 60*x_2 + 180*x*x_2"));
  auto nested = iso.from_tensor(pt);
  auto twice = taylor_lift<Element<Rational>>(SmoothMap(1, {parse_expr("t^3")}), iso.left(), nested,
                                              Element<Rational>::zero(iso.right()));
  EXPECT_EQ(iso.to_tensor(twice.front()), direct);
}

TEST(AssocIso, VerifiesAllPresetPairs) {
  std::vector<Expr> exprs = {parse_expr("t0^3 - t0*t1"), parse_expr("(t0 + 2)^4 / 3"), parse_expr("t1^2 - 5")};
  for (const auto& a : preset_names())
    for (const auto& b : preset_names()) {
      SCOPED_TRACE(a + " (x) " + b);
      AssocIso iso(2, preset(a), preset(b));
      auto r = iso.verify(exprs, 15, 9);
      EXPECT_TRUE(r.passed()) << (r.witnesses.empty() ? "" : r.witnesses.front().detail);
    }
}

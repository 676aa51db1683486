#include <gtest/gtest.h>

#include "support/printers.hpp"
#include "weil/errors.hpp"
#include "weil/polynomial.hpp"
#include "weil/random.hpp"
#include "weil/reduction.hpp"

using namespace weil;

namespace {

const std::vector<std::string> kXY = {"x", "y"};
const std::vector<std::string> kX = {"x"};

Polynomial P(const std::string& text, const std::vector<std::string>& vars = kXY) {
  return parse_polynomial(text, vars);
}

Monomial M(std::vector<unsigned> e) { return Monomial(std::move(e)); }

}  // namespace

TEST(Parse, DirectDenotation) {
  Polynomial p = P("x^2 - y^3");
  EXPECT_EQ(p.size(), 2u);
  EXPECT_EQ(p.coefficient(M({2, 0})), 1);
  EXPECT_EQ(p.coefficient(M({0, 3})), -1);
}

TEST(Parse, ZeroIsEmpty) { EXPECT_TRUE(P("0").is_zero()); }

TEST(Parse, LikeTermsCollect) {
  Polynomial p = P("2*x + 3*x");
  EXPECT_EQ(p.size(), 1u);
  EXPECT_EQ(p.coefficient(M({1, 0})), 5);
}

TEST(Parse, RationalCoefficientsAndRoundTrip) {
  Polynomial p = P("1/2*x^2*y - 3*y^4 + 4/8");
  EXPECT_EQ(p.coefficient(M({2, 1})), Rational(1, 2));
  EXPECT_EQ(p.constant_term(), Rational(1, 2));
  EXPECT_EQ(P(to_string(p, kXY)), p);
}

TEST(Parse, ErrorsCarryPositions) {
  try {
    P("x + * y");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(P("x + z"), UnknownVariable);
  EXPECT_THROW(P("x^"), ParseError);
}

TEST(MulTrunc, Examples) {
  EXPECT_TRUE(mul_trunc(P("x", kX), P("x", kX), 2).is_zero());
  EXPECT_EQ(mul_trunc(P("1 + x", kX), P("1 - x", kX), 3), P("1 - x^2", kX));
  EXPECT_EQ(mul_trunc(P("x + y"), P("x + y"), 3), P("x^2 + 2*x*y + y^2"));
}

TEST(MulTrunc, VariableCountMismatchThrows) {
  EXPECT_THROW(mul_trunc(P("x", kX), P("y"), 3), DimensionMismatch);
}

TEST(Reduction, EverythingTruncates) {
  auto b = build_reduction_basis(std::vector{P("x^2", kX)}, 1, 2);
  EXPECT_TRUE(b.empty());
}

TEST(Reduction, PowersOfOneGenerator) {
  auto b = build_reduction_basis(std::vector{P("x^2", kX)}, 1, 4);
  EXPECT_EQ(b.pivots(), (std::vector<Monomial>{M({2}), M({3})}));
}

TEST(Reduction, BinomialGenerator) {
  auto b = build_reduction_basis(std::vector{P("x^2 - y^3")}, 2, 4);
  EXPECT_EQ(b.pivots(), (std::vector<Monomial>{M({2, 0}), M({2, 1}), M({3, 0})}));
  EXPECT_EQ(b.rows().at(M({2, 0})), P("x^2 - y^3"));
}

TEST(NormalForm, Examples) {
  auto dual = build_reduction_basis(std::vector{P("x^2", kX)}, 1, 2);
  EXPECT_TRUE(normal_form(P("x^3", kX), dual).is_zero());
  auto cusp = build_reduction_basis(std::vector{P("x^2 - y^3")}, 2, 4);
  EXPECT_EQ(normal_form(P("x^2"), cusp), P("y^3"));
  ReductionBasis empty(1, 2);
  EXPECT_EQ(normal_form(P("1 + x", kX), empty), P("1 + x", kX));
}

TEST(Ordering, GradedLexIsATotalOrder) {
  Rng rng(7);
  auto random_monomial = [&] {
    return M({static_cast<unsigned>(rng.below(4)), static_cast<unsigned>(rng.below(4)),
              static_cast<unsigned>(rng.below(4))});
  };
  for (int i = 0; i < 500; ++i) {
    Monomial a = random_monomial(), b = random_monomial(), c = random_monomial();
    // Antisymmetry and totality.
    EXPECT_EQ((a < b) + (b < a) + (a == b), 1);
    if (a < b && b < c) {
      EXPECT_LT(a, c);
    }
    if (a.degree() < b.degree()) {
      EXPECT_LT(a, b);
    }
  }
  EXPECT_LT(M({0, 1}), M({1, 0}));  // y < x within a degree
}

class ReductionProperties : public ::testing::TestWithParam<int> {};

TEST_P(ReductionProperties, IdempotentLinearAndSound) {
  Rng rng(1000 + GetParam());
  const std::size_t n = 1 + rng.below(3);
  const unsigned k = 2 + static_cast<unsigned>(rng.below(4));
  std::vector<Polynomial> gens;
  for (int g = 0; g < 2; ++g) {
    Polynomial p = random_polynomial(n, k, 2, rng);
    gens.push_back(p - Polynomial::constant(n, p.constant_term()));
  }
  auto basis = build_reduction_basis(gens, n, k);

  for (const auto& [pivot, row] : basis.rows()) {
    EXPECT_EQ(row.coefficient(pivot), 1);
    EXPECT_LT(row.degree(), static_cast<int>(k));
    for (const auto& [other, _] : basis.rows())
      if (other != pivot) {
        EXPECT_EQ(row.coefficient(other), 0);
      }
  }
  for (int trial = 0; trial < 20; ++trial) {
    Polynomial p = random_polynomial(n, k + 2, 5, rng);
    Polynomial q = random_polynomial(n, k + 2, 5, rng);
    Rational a = rng.small_rational(), b = rng.small_rational();
    Polynomial np = basis.normal_form(p);
    EXPECT_EQ(basis.normal_form(np), np);
    EXPECT_EQ(basis.normal_form(p * a + q * b), np * a + basis.normal_form(q) * b);
    for (const auto& [pivot, _] : basis.rows()) EXPECT_EQ(np.coefficient(pivot), 0);
  }
  for (const auto& g : gens)
    for (const auto& mu : monomials_below(n, k)) EXPECT_TRUE(basis.normal_form(g * Polynomial::term(mu, 1)).is_zero());
}

TEST_P(ReductionProperties, TruncatedMultiplicationIsACommutativeRing) {
  Rng rng(2000 + GetParam());
  const std::size_t n = 1 + rng.below(3);
  const unsigned k = 1 + static_cast<unsigned>(rng.below(5));
  for (int trial = 0; trial < 10; ++trial) {
    Polynomial p = random_polynomial(n, k + 1, 4, rng);
    Polynomial q = random_polynomial(n, k + 1, 4, rng);
    Polynomial r = random_polynomial(n, k + 1, 4, rng);
    EXPECT_EQ(mul_trunc(p, q, k), mul_trunc(q, p, k));
    EXPECT_EQ(mul_trunc(mul_trunc(p, q, k), r, k), mul_trunc(p, mul_trunc(q, r, k), k));
    EXPECT_EQ(mul_trunc(p, q + r, k), mul_trunc(p, q, k) + mul_trunc(p, r, k));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, ReductionProperties, ::testing::Range(0, 12));

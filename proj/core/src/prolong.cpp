#include "weil/prolong.hpp"

#include "weil/errors.hpp"
#include "weil/random.hpp"

namespace weil {

struct FragmentSpace::Node {
  Kind kind = Kind::Euclidean;
  std::size_t m = 0;
  std::vector<FragmentSpace> children;  // factors, or the single base
  std::optional<WeilAlgebra> algebra;
};

FragmentSpace FragmentSpace::euclidean(std::size_t m) {
  auto n = std::make_shared<Node>();
  n->m = m;
  return FragmentSpace(std::move(n));
}

FragmentSpace FragmentSpace::product(std::vector<FragmentSpace> factors) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Product;
  n->children = std::move(factors);
  return FragmentSpace(std::move(n));
}

FragmentSpace FragmentSpace::prolonged(FragmentSpace base, WeilAlgebra w) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Prolonged;
  n->children.push_back(std::move(base));
  n->algebra = std::move(w);
  return FragmentSpace(std::move(n));
}

FragmentSpace::Kind FragmentSpace::kind() const noexcept { return node_->kind; }

std::size_t FragmentSpace::euclidean_dimension() const {
  if (kind() != Kind::Euclidean) throw ShapeMismatch(to_string() + " is not a Euclidean space");
  return node_->m;
}

const std::vector<FragmentSpace>& FragmentSpace::factors() const {
  if (kind() != Kind::Product) throw ShapeMismatch(to_string() + " is not a product");
  return node_->children;
}

const FragmentSpace& FragmentSpace::base() const {
  if (kind() != Kind::Prolonged) throw ShapeMismatch(to_string() + " is not a prolongation");
  return node_->children.front();
}

const WeilAlgebra& FragmentSpace::algebra() const {
  if (kind() != Kind::Prolonged) throw ShapeMismatch(to_string() + " is not a prolongation");
  return *node_->algebra;
}

std::size_t FragmentSpace::width() const {
  switch (kind()) {
    case Kind::Euclidean: return node_->m;
    case Kind::Prolonged: return base().width();
    case Kind::Product: {
      std::size_t w = 0;
      for (const auto& f : node_->children) w += f.width();
      return w;
    }
  }
  return 0;
}

std::string FragmentSpace::to_string() const {
  switch (kind()) {
    case Kind::Euclidean: return "R^" + std::to_string(node_->m);
    case Kind::Prolonged: {
      std::string b = base().kind() == Kind::Euclidean ? base().to_string() : "(" + base().to_string() + ")";
      return b + " (x) W[" + algebra().summary() + "]";
    }
    case Kind::Product: {
      std::string s = "(";
      for (std::size_t i = 0; i < node_->children.size(); ++i) {
        if (i) s += " x ";
        s += node_->children[i].to_string();
      }
      return s + ")";
    }
  }
  return "?";
}

bool operator==(const FragmentSpace& a, const FragmentSpace& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.node_->m != b.node_->m || a.node_->children != b.node_->children) return false;
  if (a.kind() == FragmentSpace::Kind::Prolonged) return *a.node_->algebra == *b.node_->algebra;
  return true;
}

FragmentSpace normalize(const FragmentSpace& x) {
  switch (x.kind()) {
    case FragmentSpace::Kind::Euclidean: return x;
    case FragmentSpace::Kind::Product: {
      std::vector<FragmentSpace> fs;
      for (const auto& f : x.factors()) fs.push_back(normalize(f));
      return FragmentSpace::product(std::move(fs));
    }
    case FragmentSpace::Kind::Prolonged: return prolong_space(x.base(), x.algebra());
  }
  return x;
}

FragmentSpace prolong_space(const FragmentSpace& x, const WeilAlgebra& w) {
  FragmentSpace n = normalize(x);
  switch (n.kind()) {
    case FragmentSpace::Kind::Euclidean: return FragmentSpace::prolonged(n, w);
    case FragmentSpace::Kind::Product: {
      std::vector<FragmentSpace> fs;
      for (const auto& f : n.factors()) fs.push_back(prolong_space(f, w));
      return FragmentSpace::product(std::move(fs));
    }
    case FragmentSpace::Kind::Prolonged: return FragmentSpace::prolonged(n.base(), tensor(n.algebra(), w));
  }
  return n;
}

// ---------------------------------------------------------------------------

namespace {

void collect_leaf_maps(const FragmentSpace& x, const WeilMorphism& psi, std::vector<WeilMorphism>& out) {
  switch (x.kind()) {
    case FragmentSpace::Kind::Euclidean: out.push_back(psi); return;
    case FragmentSpace::Kind::Prolonged:
      out.push_back(tensor_morphism(WeilMorphism::identity(x.algebra()), psi));
      return;
    case FragmentSpace::Kind::Product:
      for (const auto& f : x.factors()) collect_leaf_maps(f, psi, out);
      return;
  }
}

void collect_leaves(const FragmentSpace& x, std::vector<FragmentSpace>& out) {
  if (x.kind() == FragmentSpace::Kind::Product) {
    for (const auto& f : x.factors()) collect_leaves(f, out);
    return;
  }
  out.push_back(x);
}

}  // namespace

CrossAction::CrossAction(FragmentSpace x, WeilMorphism psi)
    : source_(prolong_space(x, psi.source())), target_(prolong_space(x, psi.target())), psi_(std::move(psi)) {
  collect_leaf_maps(normalize(x), psi_, leaf_maps_);
  collect_leaves(target_, leaf_targets_);
}

// ---------------------------------------------------------------------------

std::vector<Element<Rational>> class_of(const SmoothMap& f, const WeilAlgebra& w) {
  if (f.arity() != w.nvars())
    throw DimensionMismatch("map of arity " + std::to_string(f.arity()) + " against an algebra in " +
                            std::to_string(w.nvars()) + " variables");
  auto pt = generic_point<Rational>(w);
  return taylor_lift<Rational>(f, w, pt);
}

std::vector<Element<double>> class_of_real(const SmoothMap& f, const WeilAlgebra& w) {
  if (f.arity() != w.nvars())
    throw DimensionMismatch("map of arity " + std::to_string(f.arity()) + " against an algebra in " +
                            std::to_string(w.nvars()) + " variables");
  auto pt = generic_point<double>(w);
  return taylor_lift<double>(f, w, pt);
}

Equivalence equiv_mod(const SmoothMap& f, const SmoothMap& g, const WeilAlgebra& w, Tolerance tol) {
  if (f.coarity() != g.coarity())
    throw DimensionMismatch("maps have " + std::to_string(f.coarity()) + " and " + std::to_string(g.coarity()) +
                            " outputs");
  Equivalence result;
  try {
    auto cf = class_of(f, w);
    auto cg = class_of(g, w);
    for (std::size_t i = 0; i < cf.size(); ++i) {
      if (cf[i] == cg[i]) continue;
      result.equivalent = false;
      result.component = i;
      result.base_point_differs = cf[i].augmentation() != cg[i].augmentation();
      result.difference = to_string(cf[i] - cg[i]);
      break;
    }
  } catch (const ScalarModeError&) {
    result.exact = false;
    auto cf = class_of_real(f, w);
    auto cg = class_of_real(g, w);
    for (std::size_t i = 0; i < cf.size(); ++i) {
      if (cf[i].close_to(cg[i], tol)) continue;
      result.equivalent = false;
      result.component = i;
      result.base_point_differs =
          !close_doubles(cf[i].augmentation(), cg[i].augmentation(), tol.relative, tol.absolute);
      result.difference = to_string(cf[i] - cg[i]);
      break;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------

namespace {

std::string describe(std::span<const Element<Rational>> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

std::string describe(std::span<const Element<double>> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

Rational positive_rational(Rng& rng) { return fraction(rng.range(1, 12), rng.range(1, 4)); }

}  // namespace

SuiteReport check_naturality(const SmoothMap& phi, const WeilMorphism& psi, std::size_t samples,
                             std::uint64_t seed, Tolerance tol) {
  SuiteReport report{"naturality", 0, {}, std::nullopt};
  const WeilAlgebra& w1 = psi.source();
  const WeilAlgebra& w2 = psi.target();
  const auto x = FragmentSpace::euclidean(phi.arity());
  const auto y = FragmentSpace::euclidean(phi.coarity());
  CrossAction on_x(x, psi), on_y(y, psi);
  const bool polynomial = phi.is_polynomial();

  for (std::size_t s = 0; s < samples; ++s) {
    const std::uint64_t case_seed = mix_seed(seed, "naturality", s);
    Rng rng(case_seed);
    std::vector<Element<Rational>> coords;
    for (std::size_t i = 0; i < phi.arity(); ++i) {
      auto a = random_element(w1, rng);
      if (!polynomial) a.coord(0) = positive_rational(rng);
      coords.push_back(std::move(a));
    }
    auto p = unflatten<Rational>(on_x.source_space(), coords);
    ++report.cases;
    try {
      try {
        auto lhs = lift_point(phi, w2, on_x(p)).flatten();
        auto rhs = on_y(lift_point(phi, w1, p)).flatten();
        if (lhs != rhs) report.fail(case_seed, "lift-then-cross " + describe(lhs) + " != cross-then-lift " + describe(rhs));
      } catch (const ScalarModeError&) {
        std::vector<Element<double>> rc;
        for (const auto& c : coords) rc.push_back(to_double(c));
        auto pr = unflatten<double>(on_x.source_space(), rc);
        auto lhs = lift_point(phi, w2, on_x(pr)).flatten();
        auto rhs = on_y(lift_point(phi, w1, pr)).flatten();
        for (std::size_t i = 0; i < lhs.size(); ++i)
          if (!lhs[i].close_to(rhs[i], tol)) {
            report.fail(case_seed, "lift-then-cross " + describe(lhs) + " != cross-then-lift " + describe(rhs));
            break;
          }
      }
    } catch (const DomainError&) {
      // Both paths must agree on being undefined; a one-sided failure would
      // have surfaced as a mismatch above, so an error here is shared.
      --report.cases;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

Expr polynomial_expr(const Polynomial& p) {
  Expr sum = Expr::constant(0);
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Expr term = Expr::constant(c);
    for (std::size_t i = 0; i < m.nvars(); ++i)
      if (m[i]) term = term * pow(Expr::variable(i), static_cast<int>(m[i]));
    sum = first ? term : sum + term;
    first = false;
  }
  return sum;
}

SuiteReport check_product_preservation(const FragmentSpace& x, const FragmentSpace& y, const WeilAlgebra& w,
                                       const SmoothMap& f, std::size_t samples, std::uint64_t seed) {
  SuiteReport report{"product_preservation", 0, {}, std::nullopt};
  const std::size_t p = x.width();
  const std::size_t q = y.width();
  if (f.coarity() != p + q)
    throw ShapeMismatch("map has " + std::to_string(f.coarity()) + " outputs, X x Y has width " +
                        std::to_string(p + q));
  const auto xy = FragmentSpace::product({x, y});

  auto pairing_holds = [&](const SmoothMap& h) -> std::optional<std::string> {
    auto whole = class_of(h, w);
    auto left = class_of(h.select(0, p), w);
    auto right = class_of(h.select(p, q), w);
    auto pt = unflatten<Rational>(prolong_space(xy, w), whole);
    auto lp = unflatten<Rational>(prolong_space(x, w), left);
    auto rp = unflatten<Rational>(prolong_space(y, w), right);
    if (pt.parts.size() != 2 || !(pt.parts[0] == lp) || !(pt.parts[1] == rp))
      return "class " + describe(whole) + " does not pair " + describe(left) + " with " + describe(right);
    return std::nullopt;
  };

  ++report.cases;
  if (auto bad = pairing_holds(f)) report.fail(mix_seed(seed, "product_preservation", 0), *bad);

  const unsigned k = w.nilpotency_order();
  const auto gens = w.generators();
  for (std::size_t s = 1; s <= samples; ++s) {
    const std::uint64_t case_seed = mix_seed(seed, "product_preservation", s);
    Rng rng(case_seed);
    std::vector<Expr> outs = f.outputs();
    for (auto& o : outs) {
      Polynomial delta(w.nvars());
      switch (rng.below(5)) {
        case 0: break;
        case 1:  // invisible: lies in m^k
          if (w.nvars() > 0) delta.add_term(rng.pick(monomials_of_degree(w.nvars(), k)), rng.nonzero_rational());
          break;
        case 2:  // invisible: a multiple of a generator
          if (!gens.empty())
            delta = mul_trunc(random_polynomial(w.nvars(), k, 2, rng), rng.pick(gens), k + 2);
          break;
        case 3:  // usually visible: a random low-degree term
          delta = random_polynomial(w.nvars(), k, 1, rng);
          break;
        default:  // visible at the base point
          if (rng.chance(30)) delta = Polynomial::constant(w.nvars(), rng.nonzero_rational());
          break;
      }
      if (!delta.is_zero()) o = o + polynomial_expr(delta);
    }
    SmoothMap g(f.arity(), std::move(outs));
    ++report.cases;
    auto whole = equiv_mod(f, g, w);
    auto left = equiv_mod(f.select(0, p), g.select(0, p), w);
    auto right = equiv_mod(f.select(p, q), g.select(p, q), w);
    if (whole.equivalent != (left.equivalent && right.equivalent)) {
      report.fail(case_seed, "g = " + g.to_string() + ": equivalent " + (whole.equivalent ? "yes" : "no") +
                                 " but componentwise " + (left.equivalent ? "yes" : "no") + "/" +
                                 (right.equivalent ? "yes" : "no"));
      continue;
    }
    if (auto bad = pairing_holds(g)) report.fail(case_seed, *bad);
  }
  return report;
}

// ---------------------------------------------------------------------------

AssocIso::AssocIso(std::size_t m, WeilAlgebra w1, WeilAlgebra w2) : m_(m), tp_(tensor_product(w1, w2)) {}

FragmentSpace AssocIso::nested_space() const {
  return FragmentSpace::prolonged(FragmentSpace::prolonged(FragmentSpace::euclidean(m_), left()), right());
}

FragmentSpace AssocIso::tensor_space() const { return prolong_space(FragmentSpace::euclidean(m_), tp_.algebra); }

Element<Rational> AssocIso::to_tensor(const Nested& a) const {
  if (!(a.algebra() == left())) throw AlgebraMismatch("nested element is not over the left factor");
  const std::size_t d1 = left().dimension(), d2 = right().dimension();
  std::vector<Rational> pair(d1 * d2);
  for (std::size_t i = 0; i < d1; ++i) {
    if (!(a[i].algebra() == right())) throw AlgebraMismatch("nested coordinate is not over the right factor");
    for (std::size_t j = 0; j < d2; ++j) pair[tp_.pair_index(i, j)] = a[i][j];
  }
  return Element<Rational>(tp_.algebra, weil::apply(tp_.pair_to_tensor, pair));
}

AssocIso::Nested AssocIso::from_tensor(const Element<Rational>& a) const {
  if (!(a.algebra() == tp_.algebra)) throw AlgebraMismatch("element is not over the tensor algebra");
  const std::size_t d1 = left().dimension(), d2 = right().dimension();
  auto pair = weil::apply(tp_.tensor_to_pair, std::vector<Rational>(a.coords().begin(), a.coords().end()));
  std::vector<Element<Rational>> outer;
  outer.reserve(d1);
  for (std::size_t i = 0; i < d1; ++i)
    outer.emplace_back(right(), std::vector<Rational>(pair.begin() + static_cast<std::ptrdiff_t>(i * d2),
                                                      pair.begin() + static_cast<std::ptrdiff_t>((i + 1) * d2)));
  return Nested(left(), std::move(outer));
}

std::vector<Element<Rational>> AssocIso::to_tensor(std::span<const Nested> point) const {
  std::vector<Element<Rational>> out;
  for (const auto& a : point) out.push_back(to_tensor(a));
  return out;
}

std::vector<AssocIso::Nested> AssocIso::from_tensor(std::span<const Element<Rational>> point) const {
  std::vector<Nested> out;
  for (const auto& a : point) out.push_back(from_tensor(a));
  return out;
}

AssocIso::Nested AssocIso::nested_zero() const {
  return Nested(left(), std::vector<Element<Rational>>(left().dimension(), Element<Rational>::zero(right())));
}

AssocIso::Nested AssocIso::nested_basis(std::size_t i, std::size_t j) const {
  Nested e = nested_zero();
  e.coord(i).coord(j) = 1;
  return e;
}

SuiteReport AssocIso::verify(std::span<const Expr> exprs, std::size_t samples, std::uint64_t seed) const {
  SuiteReport report{"assoc_iso", 0, {}, std::nullopt};
  const std::size_t d1 = left().dimension(), d2 = right().dimension();
  const std::uint64_t basis_seed = mix_seed(seed, "assoc_iso/basis", 0);

  ++report.cases;
  if (tp_.algebra.dimension() != d1 * d2 || rank(tp_.pair_to_tensor) != d1 * d2)
    report.fail(basis_seed, "tensor dimension " + std::to_string(tp_.algebra.dimension()) + " is not " +
                                std::to_string(d1) + " * " + std::to_string(d2));
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d2; ++j) {
      ++report.cases;
      Nested e = nested_basis(i, j);
      if (!(from_tensor(to_tensor(e)) == e))
        report.fail(basis_seed, "basis pair (" + std::to_string(i) + ", " + std::to_string(j) + ") does not round-trip");
    }
  for (std::size_t t = 0; t < tp_.algebra.dimension(); ++t) {
    ++report.cases;
    std::vector<Rational> c(tp_.algebra.dimension());
    c[t] = 1;
    Element<Rational> e(tp_.algebra, c);
    if (!(to_tensor(from_tensor(e)) == e))
      report.fail(basis_seed, "tensor basis " + to_string(e) + " does not round-trip");
  }

  auto random_nested = [&](Rng& rng) {
    std::vector<Element<Rational>> outer;
    for (std::size_t i = 0; i < d1; ++i) outer.push_back(random_element(right(), rng));
    return Nested(left(), std::move(outer));
  };

  for (std::size_t s = 0; s < samples; ++s) {
    const std::uint64_t case_seed = mix_seed(seed, "assoc_iso/pairs", s);
    Rng rng(case_seed);
    Nested a = random_nested(rng), b = random_nested(rng);
    ++report.cases;
    if (!(to_tensor(a + b) == to_tensor(a) + to_tensor(b)))
      report.fail(case_seed, "addition is not preserved");
    else if (!(to_tensor(a * b) == to_tensor(a) * to_tensor(b)))
      report.fail(case_seed, "multiplication is not preserved: " + to_string(to_tensor(a * b)) + " vs " +
                                 to_string(to_tensor(a) * to_tensor(b)));
    else if (a.augmentation().augmentation() != to_tensor(a).augmentation())
      report.fail(case_seed, "augmentation is not preserved");
  }

  for (std::size_t e = 0; e < exprs.size(); ++e) {
    const std::uint64_t case_seed = mix_seed(seed, "assoc_iso/lift", e);
    Rng rng(case_seed);
    const std::size_t arity = std::max<std::size_t>(exprs[e].arity_hint(), 1);
    if (arity > m_) throw ShapeMismatch("expression " + exprs[e].to_string() + " needs more than " +
                                        std::to_string(m_) + " inputs");
    SmoothMap f(m_, {exprs[e]});
    std::vector<Element<Rational>> point;
    for (std::size_t i = 0; i < m_; ++i) point.push_back(random_element(tp_.algebra, rng));
    ++report.cases;
    try {
      auto direct = taylor_lift<Rational>(f, tp_.algebra, point);
      auto nested_point = from_tensor(point);
      auto twice = taylor_lift<Element<Rational>>(f, left(), nested_point, Element<Rational>::zero(right()));
      if (!(to_tensor(twice) == direct))
        report.fail(case_seed, "lifting " + exprs[e].to_string() + " through the tensor gives " +
                                   describe(direct) + ", lifting twice gives " + describe(to_tensor(twice)));
    } catch (const DomainError&) {
      --report.cases;
    }
  }
  return report;
}

}  // namespace weil

#include "weil/cahiers.hpp"

#include <algorithm>
#include <numeric>

#include "weil/linalg.hpp"

namespace weil {

namespace {

/// Ring operations for J on the polynomial fragment: constants only.
template <class R>
class FragmentOps {
 public:
  explicit FragmentOps(R zero) : zero_(std::move(zero)) {}

  R constant(const Rational& q) const { return scalar_traits<R>::from_rational(zero_, q); }
  R reciprocal(const R&) const {
    throw FragmentViolation("division by a non-constant leaves the polynomial fragment");
  }
  R apply(Primitive p, const R&) const {
    throw FragmentViolation(std::string(primitive_name(p)) + " leaves the polynomial fragment");
  }

 private:
  R zero_;
};

Element<Rational> unit_element(const WeilAlgebra& w, std::size_t i) {
  std::vector<Rational> c(w.dimension());
  c.at(i) = 1;
  return Element<Rational>(w, std::move(c));
}

std::size_t index_of(const std::vector<Monomial>& sorted, const Monomial& m) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), m);
  if (it == sorted.end() || !(*it == m)) return sorted.size();
  return static_cast<std::size_t>(it - sorted.begin());
}

bool is_fragment_shape(const FragmentSpace& x) {
  switch (x.kind()) {
    case FragmentSpace::Kind::Euclidean: return true;
    case FragmentSpace::Kind::Prolonged: return false;
    case FragmentSpace::Kind::Product:
      return std::all_of(x.factors().begin(), x.factors().end(), is_fragment_shape);
  }
  return false;
}

std::string names_of(const std::vector<FragmentPoly>& polys, const std::string& prefix) {
  std::string s;
  for (std::size_t i = 0; i < polys.size(); ++i)
    s += (s.empty() ? "" : "; ") + prefix + std::to_string(i) + " -> " + to_string(polys[i]);
  return s;
}

/// g(values) in the target fragment, with no truncation in base variables.
FragmentPoly substitute(const Polynomial& g, std::span<const FragmentPoly> values, const DObject& target) {
  FragmentPoly out = target.zero();
  for (const auto& [mono, c] : g.terms()) {
    FragmentPoly t = target.constant(c);
    for (std::size_t i = 0; i < mono.nvars(); ++i)
      for (unsigned e = 0; e < mono[i]; ++e) t = t * values[i];
    out += t;
  }
  return out;
}

template <class Value>
Value combine(const Rational& q, const Value& a, const Value& b) {
  Value out;
  for (std::size_t i = 0; i < a.components.size(); ++i) {
    using traits = scalar_traits<std::decay_t<decltype(a.components[i])>>;
    out.components.push_back(traits::scale(a.components[i], q) + b.components[i]);
  }
  return out;
}

std::string describe(const CurriedValue& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.components.size(); ++i) s += (i ? ", " : "") + to_string(v.components[i]);
  return s + ")";
}

}  // namespace

// -- DObject ---------------------------------------------------------------

DObject::DObject(std::size_t base_arity, WeilAlgebra weil)
    : DObject(base_arity ? std::vector<std::size_t>{base_arity} : std::vector<std::size_t>{}, std::move(weil)) {}

DObject::DObject(std::vector<std::size_t> blocks, WeilAlgebra weil) : base_arity_(0), weil_(std::move(weil)) {
  for (std::size_t b : blocks)
    if (b) blocks_.push_back(b);
  base_arity_ = std::accumulate(blocks_.begin(), blocks_.end(), std::size_t{0});
}

FragmentPoly DObject::zero() const { return FragmentPoly(base_arity_, Element<Rational>::zero(weil_)); }

FragmentPoly DObject::constant(const Element<Rational>& c) const {
  if (!(c.algebra() == weil_)) throw AlgebraMismatch("constant lies outside " + weil_.summary());
  return FragmentPoly::constant(base_arity_, c);
}

FragmentPoly DObject::constant(const Rational& q) const {
  return constant(Element<Rational>::constant(weil_, q));
}

FragmentPoly DObject::base_variable(std::size_t i) const {
  if (i >= base_arity_)
    throw DimensionMismatch("base variable s" + std::to_string(i) + " of an object with " +
                            std::to_string(base_arity_) + " base variables");
  return FragmentPoly::term(Monomial::variable(base_arity_, i), Element<Rational>::constant(weil_, Rational(1)));
}

FragmentPoly DObject::weil_variable(std::size_t j) const {
  if (j >= weil_.nvars())
    throw DimensionMismatch("Weil variable " + std::to_string(j) + " of an algebra with " +
                            std::to_string(weil_.nvars()) + " variables");
  return constant(Element<Rational>::variable(weil_, j));
}

std::string DObject::to_string() const {
  std::string blocks;
  for (std::size_t b : blocks_) blocks += (blocks.empty() ? "" : "+") + std::to_string(b);
  return "C(R^" + (blocks.empty() ? std::string("0") : blocks) + ") (x) W[" + weil_.summary() + "]";
}

bool operator==(const DObject& a, const DObject& b) { return a.blocks_ == b.blocks_ && a.weil_ == b.weil_; }

DObject dobj_coproduct(const DObject& c1, const DObject& c2) {
  std::vector<std::size_t> blocks = c1.blocks();
  blocks.insert(blocks.end(), c2.blocks().begin(), c2.blocks().end());
  return DObject(std::move(blocks), tensor(c1.weil(), c2.weil()));
}

std::string to_string(const JValue& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.components.size(); ++i) s += (i ? ", " : "") + to_string(v.components[i]);
  return s + ")";
}

// -- JSpace ----------------------------------------------------------------

JSpace::JSpace(FragmentSpace x, DObject object, unsigned degree_bound)
    : x_(std::move(x)), object_(std::move(object)), d_(degree_bound) {
  if (!is_fragment_shape(x_))
    throw ShapeMismatch("unsupported space shape " + x_.to_string() +
                        ": J is evaluated on Euclidean spaces and their finite products");
  monomials_ = monomials_block_bounded(object_.blocks(), d_);
}

std::size_t JSpace::dimension_formula(std::size_t p, std::span<const std::size_t> blocks, unsigned d,
                                      std::size_t weil_dimension) {
  std::size_t count = p * weil_dimension;
  for (std::size_t n : blocks) {
    // C(n + d, d), built up so every intermediate quotient is exact.
    std::size_t c = 1;
    for (unsigned i = 1; i <= d; ++i) c = c * (n + i) / i;
    count *= c;
  }
  return count;
}

JValue JSpace::zero() const { return JValue{std::vector<FragmentPoly>(width(), object_.zero())}; }

JValue JSpace::basis_vector(std::size_t index) const {
  if (index >= dimension())
    throw DimensionMismatch("basis index " + std::to_string(index) + " of a carrier of dimension " +
                            std::to_string(dimension()));
  const std::size_t dw = object_.weil().dimension();
  const std::size_t i = index % dw;
  const std::size_t mono = (index / dw) % monomials_.size();
  const std::size_t comp = index / dw / monomials_.size();
  JValue v = zero();
  v.components[comp].add_term(monomials_[mono], unit_element(object_.weil(), i));
  return v;
}

JValue JSpace::from_coordinates(std::span<const Rational> coords) const {
  if (coords.size() != dimension())
    throw DimensionMismatch("carrier of dimension " + std::to_string(dimension()) + " given " +
                            std::to_string(coords.size()) + " coordinates");
  const std::size_t dw = object_.weil().dimension();
  JValue v = zero();
  for (std::size_t comp = 0, at = 0; comp < width(); ++comp)
    for (const auto& mono : monomials_) {
      std::vector<Rational> c(coords.begin() + at, coords.begin() + at + dw);
      at += dw;
      v.components[comp].add_term(mono, Element<Rational>(object_.weil(), std::move(c)));
    }
  return v;
}

std::vector<Rational> JSpace::coordinates(const JValue& v) const {
  if (v.components.size() != width())
    throw ShapeMismatch("value with " + std::to_string(v.components.size()) + " components in a carrier over " +
                        x_.to_string());
  const std::size_t dw = object_.weil().dimension();
  std::vector<Rational> out(dimension());
  for (std::size_t comp = 0; comp < width(); ++comp) {
    const auto& poly = v.components[comp];
    if (poly.nvars() != object_.base_arity())
      throw DimensionMismatch("component over " + std::to_string(poly.nvars()) + " base variables, object has " +
                              std::to_string(object_.base_arity()));
    for (const auto& [mono, coef] : poly.terms()) {
      const std::size_t at = index_of(monomials_, mono);
      if (at == monomials_.size())
        throw DegreeOverflow("term " + to_string(poly) + " of component " + std::to_string(comp) +
                             " exceeds base degree " + std::to_string(d_));
      if (!(coef.algebra() == object_.weil())) throw AlgebraMismatch("coefficient lies outside the object's algebra");
      for (std::size_t i = 0; i < dw; ++i) out[(comp * monomials_.size() + at) * dw + i] = coef[i];
    }
  }
  return out;
}

bool JSpace::contains(const JValue& v) const {
  if (v.components.size() != width()) return false;
  for (const auto& poly : v.components)
    for (const auto& [mono, _] : poly.terms())
      if (index_of(monomials_, mono) == monomials_.size()) return false;
  return true;
}

JValue JSpace::random(Rng& rng) const {
  JValue v = zero();
  for (auto& poly : v.components)
    for (const auto& mono : monomials_)
      if (rng.chance(40)) poly.add_term(mono, random_element(object_.weil(), rng));
  return v;
}

// -- J on maps ---------------------------------------------------------------

JValue j_on_map(const SmoothMap& phi, const DObject& c, const JValue& v) {
  if (!phi.is_polynomial()) throw FragmentViolation("map " + phi.to_string() + " is not polynomial");
  if (v.components.size() != phi.arity())
    throw DimensionMismatch("map has arity " + std::to_string(phi.arity()) + ", value has " +
                            std::to_string(v.components.size()) + " components");
  FragmentOps<FragmentPoly> ops(c.zero());
  JValue out;
  for (const auto& e : phi.outputs())
    out.components.push_back(evaluate<FragmentPoly>(e, v.components, ops));
  return out;
}

SmoothMap random_polynomial_map(std::size_t arity, std::size_t coarity, unsigned max_degree, Rng& rng) {
  std::vector<Expr> outputs;
  for (std::size_t i = 0; i < coarity; ++i)
    outputs.push_back(polynomial_expr(random_polynomial(arity, max_degree, static_cast<unsigned>(rng.range(1, 3)), rng)));
  return SmoothMap(arity, std::move(outputs));
}

// -- Currying --------------------------------------------------------------

CurryIso::CurryIso(std::size_t p, DObject c1, DObject c2, unsigned degree_bound)
    : p_(p),
      c1_(std::move(c1)),
      c2_(std::move(c2)),
      joint_(dobj_coproduct(c1_, c2_)),
      tp_(tensor_product(c1_.weil(), c2_.weil())),
      d_(degree_bound),
      joint_space_(FragmentSpace::euclidean(p), joint_, degree_bound),
      inner_monomials_(monomials_block_bounded(c1_.blocks(), degree_bound)),
      outer_monomials_(monomials_block_bounded(c2_.blocks(), degree_bound)) {}

std::size_t CurryIso::curried_dimension() const {
  return p_ * outer_monomials_.size() * c2_.weil().dimension() * inner_monomials_.size() * c1_.weil().dimension();
}

CurriedPoly CurryIso::zero_curried() const {
  Element<FragmentPoly> z(c2_.weil(), std::vector<FragmentPoly>(c2_.weil().dimension(), c1_.zero()));
  return CurriedPoly(c2_.base_arity(), std::move(z));
}

CurriedPoly CurryIso::curry(const FragmentPoly& joint) const {
  const std::size_t n = c1_.base_arity(), m = c2_.base_arity();
  const std::size_t d1 = c1_.weil().dimension(), d2 = c2_.weil().dimension();
  CurriedPoly out = zero_curried();
  for (const auto& [mono, coef] : joint.terms()) {
    const auto pair = weil::apply(tp_.tensor_to_pair, std::vector<Rational>(coef.coords().begin(), coef.coords().end()));
    const Monomial inner = mono.slice(0, n);
    Element<FragmentPoly> regrouped = scalar_traits<Element<FragmentPoly>>::zero_like(out.zero_coefficient());
    for (std::size_t j = 0; j < d2; ++j) {
      std::vector<Rational> w(d1);
      for (std::size_t i = 0; i < d1; ++i) w[i] = pair[tp_.pair_index(i, j)];
      regrouped.coord(j) = FragmentPoly::term(inner, Element<Rational>(c1_.weil(), std::move(w)));
    }
    out.add_term(mono.slice(n, m), regrouped);
  }
  return out;
}

FragmentPoly CurryIso::uncurry(const CurriedPoly& curried) const {
  const std::size_t d1 = c1_.weil().dimension(), d2 = c2_.weil().dimension();
  FragmentPoly out = joint_.zero();
  for (const auto& [outer, coef] : curried.terms())
    for (std::size_t j = 0; j < d2; ++j)
      for (const auto& [inner, w] : coef[j].terms()) {
        std::vector<Rational> pair(d1 * d2);
        for (std::size_t i = 0; i < d1; ++i) pair[tp_.pair_index(i, j)] = w[i];
        out.add_term(inner.concat(outer), Element<Rational>(joint_.weil(), weil::apply(tp_.pair_to_tensor, pair)));
      }
  return out;
}

CurriedValue CurryIso::curry(const JValue& v) const {
  CurriedValue out;
  for (const auto& c : v.components) out.components.push_back(curry(c));
  return out;
}

JValue CurryIso::uncurry(const CurriedValue& v) const {
  JValue out;
  for (const auto& c : v.components) out.components.push_back(uncurry(c));
  return out;
}

CurriedValue CurryIso::on_map(const SmoothMap& phi, const CurriedValue& v) const {
  if (!phi.is_polynomial()) throw FragmentViolation("map " + phi.to_string() + " is not polynomial");
  if (v.components.size() != phi.arity())
    throw DimensionMismatch("map has arity " + std::to_string(phi.arity()) + ", value has " +
                            std::to_string(v.components.size()) + " components");
  FragmentOps<CurriedPoly> ops(zero_curried());
  CurriedValue out;
  for (const auto& e : phi.outputs()) out.components.push_back(evaluate<CurriedPoly>(e, v.components, ops));
  return out;
}

CurriedValue CurryIso::curried_basis_vector(std::size_t index) const {
  if (index >= curried_dimension())
    throw DimensionMismatch("basis index " + std::to_string(index) + " of a curried carrier of dimension " +
                            std::to_string(curried_dimension()));
  const std::size_t d1 = c1_.weil().dimension(), d2 = c2_.weil().dimension();
  const std::size_t i = index % d1;
  index /= d1;
  const std::size_t a1 = index % inner_monomials_.size();
  index /= inner_monomials_.size();
  const std::size_t j = index % d2;
  index /= d2;
  const std::size_t a2 = index % outer_monomials_.size();
  const std::size_t comp = index / outer_monomials_.size();

  CurriedValue v{std::vector<CurriedPoly>(p_, zero_curried())};
  Element<FragmentPoly> coef = scalar_traits<Element<FragmentPoly>>::zero_like(v.components[0].zero_coefficient());
  coef.coord(j) = FragmentPoly::term(inner_monomials_[a1], unit_element(c1_.weil(), i));
  v.components[comp].add_term(outer_monomials_[a2], coef);
  return v;
}

std::vector<Rational> CurryIso::curried_coordinates(const CurriedValue& v) const {
  if (v.components.size() != p_)
    throw ShapeMismatch("curried value with " + std::to_string(v.components.size()) + " components, expected " +
                        std::to_string(p_));
  const std::size_t d1 = c1_.weil().dimension(), d2 = c2_.weil().dimension();
  const std::size_t m1 = inner_monomials_.size(), m2 = outer_monomials_.size();
  std::vector<Rational> out(curried_dimension());
  for (std::size_t comp = 0; comp < p_; ++comp)
    for (const auto& [outer, coef] : v.components[comp].terms()) {
      const std::size_t a2 = index_of(outer_monomials_, outer);
      if (a2 == m2) throw DegreeOverflow("outer term exceeds base degree " + std::to_string(d_));
      for (std::size_t j = 0; j < d2; ++j)
        for (const auto& [inner, w] : coef[j].terms()) {
          const std::size_t a1 = index_of(inner_monomials_, inner);
          if (a1 == m1) throw DegreeOverflow("inner term exceeds base degree " + std::to_string(d_));
          for (std::size_t i = 0; i < d1; ++i) out[(((comp * m2 + a2) * d2 + j) * m1 + a1) * d1 + i] = w[i];
        }
    }
  return out;
}

SuiteReport CurryIso::verify(std::size_t samples, std::uint64_t seed) const {
  SuiteReport report{"curry_iso", 0, {}, std::nullopt};
  const std::size_t dim = joint_space_.dimension();

  ++report.cases;
  if (curried_dimension() != dim)
    report.fail(mix_seed(seed, "curry_iso/dimension", 0),
                "joint dimension " + std::to_string(dim) + " != curried dimension " + std::to_string(curried_dimension()));

  // Two-sided inverses on both bases, together with linearity, make curry a
  // bijection without forming its matrix.
  for (std::size_t k = 0; k < dim; ++k) {
    ++report.cases;
    const std::uint64_t case_seed = mix_seed(seed, "curry_iso/joint-basis", k);
    const JValue e = joint_space_.basis_vector(k);
    try {
      const CurriedValue c = curry(e);
      curried_coordinates(c);
      if (!(uncurry(c) == e)) report.fail(case_seed, "uncurry(curry(e" + std::to_string(k) + ")) != e" + std::to_string(k));
    } catch (const DegreeOverflow& err) {
      report.fail(case_seed, "curry(e" + std::to_string(k) + ") left the carrier: " + err.what());
    }
  }
  for (std::size_t k = 0; k < curried_dimension(); ++k) {
    ++report.cases;
    const std::uint64_t case_seed = mix_seed(seed, "curry_iso/curried-basis", k);
    const CurriedValue f = curried_basis_vector(k);
    try {
      const JValue u = uncurry(f);
      joint_space_.coordinates(u);
      if (!(curry(u) == f)) report.fail(case_seed, "curry(uncurry(f" + std::to_string(k) + ")) != f" + std::to_string(k));
    } catch (const DegreeOverflow& err) {
      report.fail(case_seed, "uncurry(f" + std::to_string(k) + ") left the carrier: " + err.what());
    }
  }

  for (std::size_t s = 0; s < samples; ++s) {
    ++report.cases;
    const std::uint64_t case_seed = mix_seed(seed, "curry_iso", s);
    Rng rng(case_seed);
    const JValue a = joint_space_.random(rng), b = joint_space_.random(rng);
    const Rational q = rng.small_rational();
    const CurriedValue lhs = curry(combine(q, a, b));
    const CurriedValue rhs = combine(q, curry(a), curry(b));
    if (!(lhs == rhs)) report.fail(case_seed, "curry is not linear: " + describe(lhs) + " != " + describe(rhs));
  }
  return report;
}

// -- Laws ------------------------------------------------------------------

SuiteReport check_j_product_law(const FragmentSpace& x, const FragmentSpace& y, const DObject& c, unsigned d,
                                std::size_t samples, std::uint64_t seed) {
  SuiteReport report{"j_product", 0, {}, std::nullopt};
  const JSpace jx(x, c, d), jy(y, c, d), jxy(FragmentSpace::product({x, y}), c, d);
  const std::size_t wx = jx.width(), wy = jy.width();
  const SmoothMap px = SmoothMap::projection(wx + wy, 0, wx);
  const SmoothMap py = SmoothMap::projection(wx + wy, wx, wy);

  auto split = [&](const JValue& v) {
    JValue a{{v.components.begin(), v.components.begin() + static_cast<std::ptrdiff_t>(wx)}};
    JValue b{{v.components.begin() + static_cast<std::ptrdiff_t>(wx), v.components.end()}};
    return std::pair{a, b};
  };

  ++report.cases;
  if (jxy.dimension() != jx.dimension() + jy.dimension())
    report.fail(mix_seed(seed, "j_product/dimension", 0),
                "dim J(X x Y) = " + std::to_string(jxy.dimension()) + " but dim J(X) + dim J(Y) = " +
                    std::to_string(jx.dimension() + jy.dimension()));

  for (std::size_t k = 0; k < jxy.dimension(); ++k) {
    ++report.cases;
    const std::uint64_t case_seed = mix_seed(seed, "j_product/basis", k);
    const JValue e = jxy.basis_vector(k);
    const auto [a, b] = split(e);
    auto coords = jx.coordinates(a);
    const auto cb = jy.coordinates(b);
    coords.insert(coords.end(), cb.begin(), cb.end());
    if (coords != jxy.coordinates(e))
      report.fail(case_seed, "splitting basis vector " + std::to_string(k) + " does not preserve coordinates");
    if (!(j_on_map(px, c, e) == a) || !(j_on_map(py, c, e) == b))
      report.fail(case_seed, "J of the projections disagrees with the split on basis vector " + std::to_string(k));
  }
  // Pairing then splitting is the identity on both factors.
  for (std::size_t k = 0; k < jx.dimension() + jy.dimension(); ++k) {
    ++report.cases;
    const std::uint64_t case_seed = mix_seed(seed, "j_product/factor-basis", k);
    const bool left = k < jx.dimension();
    JValue a = left ? jx.basis_vector(k) : jx.zero();
    JValue b = left ? jy.zero() : jy.basis_vector(k - jx.dimension());
    JValue paired{a.components};
    paired.components.insert(paired.components.end(), b.components.begin(), b.components.end());
    const auto [a2, b2] = split(paired);
    if (!(a2 == a) || !(b2 == b) || !jxy.contains(paired))
      report.fail(case_seed, "pairing factor basis vector " + std::to_string(k) + " does not round-trip");
  }

  for (std::size_t s = 0; s < samples; ++s) {
    ++report.cases;
    const std::uint64_t case_seed = mix_seed(seed, "j_product", s);
    Rng rng(case_seed);
    const std::size_t r = static_cast<std::size_t>(rng.range(1, 2));
    const SmoothMap phi = random_polynomial_map(r, wx + wy, 3, rng);
    const JValue v = JSpace(FragmentSpace::euclidean(r), c, d).random(rng);
    const auto [lhs_a, lhs_b] = split(j_on_map(phi, c, v));
    const JValue rhs_a = j_on_map(phi.select(0, wx), c, v);
    const JValue rhs_b = j_on_map(phi.select(wx, wy), c, v);
    if (!(lhs_a == rhs_a) || !(lhs_b == rhs_b))
      report.fail(case_seed, "J(" + phi.to_string() + ") at " + to_string(v) + " does not pair: " +
                                 to_string(lhs_a) + " | " + to_string(lhs_b) + " vs " + to_string(rhs_a) + " | " +
                                 to_string(rhs_b));
  }
  return report;
}

SuiteReport check_j_prolongation_law(const FragmentSpace& x, const DObject& c1, const DObject& c2, unsigned d,
                                     std::size_t samples, std::uint64_t seed) {
  SuiteReport report{"j_prolongation", 0, {}, std::nullopt};
  const JSpace inner(x, c1, d);
  const std::size_t p = inner.width();
  const CurryIso iso(p, c1, c2, d);

  // dim J(X (x) C1)(C2) = dim(X (x) C1 carrier) * dim J(R)(C2).
  const std::size_t fragment_side = inner.dimension() * JSpace(FragmentSpace::euclidean(1), c2, d).dimension();
  ++report.cases;
  if (fragment_side != iso.joint_space().dimension())
    report.fail(mix_seed(seed, "j_prolongation/dimension", 0),
                "dim J(X)(C1 + C2) = " + std::to_string(iso.joint_space().dimension()) +
                    " but dim J(X (x) C1)(C2) = " + std::to_string(fragment_side));

  SuiteReport bijection = iso.verify(samples, seed);
  report.absorb(bijection);

  for (std::size_t s = 0; s < samples; ++s) {
    ++report.cases;
    const std::uint64_t case_seed = mix_seed(seed, "j_prolongation", s);
    Rng rng(case_seed);
    const SmoothMap phi = random_polynomial_map(p, p, 3, rng);
    const JValue v = iso.joint_space().random(rng);
    const CurriedValue lhs = iso.curry(j_on_map(phi, iso.joint(), v));
    const CurriedValue rhs = iso.on_map(phi, iso.curry(v));
    if (!(lhs == rhs))
      report.fail(case_seed, "currying is not natural for " + phi.to_string() + " at " + to_string(v) + ": " +
                                 describe(lhs) + " != " + describe(rhs));
  }
  return report;
}

// -- Arrows ----------------------------------------------------------------

DMorphism::DMorphism(DObject source, DObject target, std::vector<FragmentPoly> base_part,
                     std::vector<FragmentPoly> weil_part)
    : source_(std::move(source)),
      target_(std::move(target)),
      base_part_(std::move(base_part)),
      weil_part_(std::move(weil_part)) {
  if (base_part_.size() != source_.base_arity())
    throw DimensionMismatch("base part has " + std::to_string(base_part_.size()) + " entries, source has " +
                            std::to_string(source_.base_arity()) + " base variables");
  if (weil_part_.size() != source_.weil().nvars())
    throw DimensionMismatch("Weil part has " + std::to_string(weil_part_.size()) + " entries, source algebra has " +
                            std::to_string(source_.weil().nvars()) + " variables");
  for (const auto* part : {&base_part_, &weil_part_})
    for (const auto& poly : *part) {
      if (poly.nvars() != target_.base_arity())
        throw DimensionMismatch("image over " + std::to_string(poly.nvars()) + " base variables, target has " +
                                std::to_string(target_.base_arity()));
      if (!(poly.zero_coefficient().algebra() == target_.weil()))
        throw AlgebraMismatch("image coefficients lie outside " + target_.weil().summary());
    }
  for (const auto& g : source_.weil().ideal_generators()) {
    const FragmentPoly value = substitute(g, weil_part_, target_);
    if (!value.is_zero()) throw IdealViolation(weil::to_string(g, source_.weil().variables()), weil::to_string(value));
  }
  for (const auto& b : source_.weil().basis())
    weil_basis_images_.push_back(substitute(Polynomial::term(b, 1), weil_part_, target_));
}

DMorphism DMorphism::identity(const DObject& c) {
  std::vector<FragmentPoly> base, weil_images;
  for (std::size_t i = 0; i < c.base_arity(); ++i) base.push_back(c.base_variable(i));
  for (std::size_t j = 0; j < c.weil().nvars(); ++j) weil_images.push_back(c.weil_variable(j));
  return DMorphism(c, c, std::move(base), std::move(weil_images));
}

FragmentPoly DMorphism::apply(const FragmentPoly& v) const {
  if (v.nvars() != source_.base_arity())
    throw DimensionMismatch("element over " + std::to_string(v.nvars()) + " base variables, source has " +
                            std::to_string(source_.base_arity()));
  if (!(v.zero_coefficient().algebra() == source_.weil()))
    throw AlgebraMismatch("element coefficients lie outside " + source_.weil().summary());
  FragmentPoly out = target_.zero();
  for (const auto& [mono, coef] : v.terms()) {
    FragmentPoly image = target_.zero();
    for (std::size_t i = 0; i < coef.dimension(); ++i)
      if (coef[i] != 0) image += scalar_traits<FragmentPoly>::scale(weil_basis_images_[i], coef[i]);
    for (std::size_t i = 0; i < mono.nvars() && !image.is_zero(); ++i)
      for (unsigned e = 0; e < mono[i]; ++e) image = image * base_part_[i];
    out += image;
  }
  return out;
}

JValue DMorphism::apply(const JValue& v) const {
  JValue out;
  for (const auto& c : v.components) out.components.push_back(apply(c));
  return out;
}

DMorphism DMorphism::then(const DMorphism& next) const {
  if (!(next.source_ == target_))
    throw AlgebraMismatch("cannot compose: " + target_.to_string() + " is not " + next.source_.to_string());
  std::vector<FragmentPoly> base, weil_images;
  for (const auto& b : base_part_) base.push_back(next.apply(b));
  for (const auto& w : weil_part_) weil_images.push_back(next.apply(w));
  return DMorphism(source_, next.target_, std::move(base), std::move(weil_images));
}

std::string DMorphism::to_string() const {
  std::string base = names_of(base_part_, "s");
  std::string weil_images;
  const auto& vars = source_.weil().variables();
  for (std::size_t j = 0; j < weil_part_.size(); ++j)
    weil_images += (weil_images.empty() ? "" : "; ") + vars[j] + " -> " + weil::to_string(weil_part_[j]);
  if (base.empty()) return "{" + weil_images + "}";
  if (weil_images.empty()) return "{" + base + "}";
  return "{" + base + "; " + weil_images + "}";
}

bool operator==(const DMorphism& a, const DMorphism& b) {
  return a.source_ == b.source_ && a.target_ == b.target_ && a.base_part_ == b.base_part_ &&
         a.weil_part_ == b.weil_part_;
}

std::pair<DMorphism, DMorphism> coproduct_injections(const DObject& c1, const DObject& c2) {
  const DObject joint = dobj_coproduct(c1, c2);
  auto injection = [&](const DObject& c, std::size_t base_offset, std::size_t weil_offset) {
    std::vector<FragmentPoly> base, weil_images;
    for (std::size_t i = 0; i < c.base_arity(); ++i) base.push_back(joint.base_variable(base_offset + i));
    for (std::size_t j = 0; j < c.weil().nvars(); ++j) weil_images.push_back(joint.weil_variable(weil_offset + j));
    return DMorphism(c, joint, std::move(base), std::move(weil_images));
  };
  return {injection(c1, 0, 0), injection(c2, c1.base_arity(), c1.weil().nvars())};
}

InducedAction::InducedAction(const FragmentSpace& x, DMorphism rho, unsigned degree_bound)
    : rho_(std::move(rho)), source_(x, rho_.source(), degree_bound), target_(x, rho_.target(), degree_bound) {}

JValue InducedAction::operator()(const JValue& v) const {
  if (!source_.contains(v))
    throw DegreeOverflow("value " + to_string(v) + " is outside the degree-" + std::to_string(source_.degree_bound()) +
                         " carrier of the source");
  JValue out = rho_.apply(v);
  if (!target_.contains(out))
    throw DegreeOverflow("substituting " + rho_.to_string() + " into " + to_string(v) + " gives " + to_string(out) +
                         ", beyond base degree " + std::to_string(target_.degree_bound()));
  return out;
}

// -- Sampling and the probe --------------------------------------------------

WeilMorphism random_weil_morphism(const WeilAlgebra& w, const WeilAlgebra& w2, Rng& rng) {
  const std::size_t n = w.nvars(), m = w2.nvars();
  const unsigned k2 = w2.nilpotency_order();
  if (n == 0 || m == 0 || k2 <= 1) return WeilMorphism::zero(w, w2);
  for (unsigned attempt = 0; attempt < 24; ++attempt) {
    const unsigned min_degree = 1 + attempt / 6;
    if (min_degree >= k2) break;
    std::vector<Polynomial> psibar;
    for (std::size_t i = 0; i < n; ++i) {
      Polynomial p(m);
      const auto terms = rng.range(0, 2);
      for (std::int64_t t = 0; t < terms; ++t) {
        const auto degree = static_cast<unsigned>(rng.range(min_degree, k2 - 1));
        p.add_term(rng.pick(monomials_of_degree(m, degree)), rng.nonzero_rational());
      }
      psibar.push_back(std::move(p));
    }
    try {
      return WeilMorphism(w, w2, std::move(psibar));
    } catch (const IdealViolation&) {
      // Rejected; draw again.
    }
  }
  return WeilMorphism::zero(w, w2);
}

DMorphism random_dmorphism(const DObject& source, const DObject& target, Rng& rng) {
  if (source.blocks().size() > 1)
    throw ShapeMismatch("random arrows are drawn only out of single-block objects, not " + source.to_string());
  const WeilMorphism psi = random_weil_morphism(source.weil(), target.weil(), rng);
  const bool mixed = rng.chance(50);

  std::vector<FragmentPoly> base;
  for (std::size_t i = 0; i < source.base_arity(); ++i) {
    FragmentPoly image = mixed ? target.constant(random_element(target.weil(), rng))
                               : target.constant(rng.small_rational());
    for (std::size_t k = 0; k < target.base_arity(); ++k)
      if (rng.chance(50)) image += scalar_traits<FragmentPoly>::scale(target.base_variable(k), rng.nonzero_rational());
    base.push_back(std::move(image));
  }
  std::vector<FragmentPoly> weil_images;
  for (const auto& p : psi.psibar())
    weil_images.push_back(target.constant(Element<Rational>::from_polynomial(target.weil(), p)));
  return DMorphism(source, target, std::move(base), std::move(weil_images));
}

std::optional<std::string> identity_action_failure(const FragmentSpace& x, const DObject& c, unsigned d) {
  const InducedAction id(x, DMorphism::identity(c), d);
  for (std::size_t k = 0; k < id.source().dimension(); ++k) {
    const JValue e = id.source().basis_vector(k);
    const JValue image = id(e);
    if (!(image == e)) return "identity of " + c.to_string() + " sends " + to_string(e) + " to " + to_string(image);
  }
  return std::nullopt;
}

std::optional<std::string> composition_failure(const FragmentSpace& x, std::span<const DObject> objects, unsigned d,
                                               std::uint64_t case_seed) {
  if (objects.empty()) throw ShapeMismatch("the functoriality probe needs at least one object");
  Rng rng(case_seed);
  const DObject& c = objects[rng.below(objects.size())];
  const DObject& c1 = objects[rng.below(objects.size())];
  const DObject& c2 = objects[rng.below(objects.size())];
  const DMorphism rho = random_dmorphism(c, c1, rng);
  const DMorphism rho2 = random_dmorphism(c1, c2, rng);
  const std::string context = "rho = " + rho.to_string() + ", rho' = " + rho2.to_string();
  try {
    const DMorphism composite = rho.then(rho2);
    const InducedAction first(x, rho, d), second(x, rho2, d), both(x, composite, d);
    const JValue v = first.source().random(rng);
    const JValue lhs = both(v);
    const JValue rhs = second(first(v));
    if (!(lhs == rhs))
      return context + ", v = " + to_string(v) + ": action(rho' o rho)(v) = " + to_string(lhs) +
             " but action(rho')(action(rho)(v)) = " + to_string(rhs);
  } catch (const IdealViolation& err) {
    return context + ": composite is not a valid arrow: " + err.what();
  } catch (const DegreeOverflow& err) {
    // Reported as a failure: the carrier is never truncated to make the
    // two sides comparable.
    return context + ": " + err.what();
  }
  return std::nullopt;
}

SuiteReport probe_c_functoriality(const FragmentSpace& x, std::span<const DObject> objects, unsigned d,
                                  std::size_t pairs, std::uint64_t seed) {
  SuiteReport report{"c_functoriality", 0, {}, std::nullopt};
  if (objects.empty()) throw ShapeMismatch("the functoriality probe needs at least one object");
  for (std::size_t o = 0; o < objects.size(); ++o) {
    ++report.cases;
    if (auto failure = identity_action_failure(x, objects[o], d))
      report.fail(mix_seed(seed, "c_functoriality/identity", o), *failure);
  }
  for (std::size_t s = 0; s < pairs; ++s) {
    ++report.cases;
    const std::uint64_t case_seed = mix_seed(seed, "c_functoriality", s);
    if (auto failure = composition_failure(x, objects, d, case_seed)) report.fail(case_seed, *failure);
  }
  report.outcome = report.passed() ? "evidence-for" : "counterexample";
  return report;
}

}  // namespace weil

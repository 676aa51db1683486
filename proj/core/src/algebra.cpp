#include "weil/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "weil/errors.hpp"

namespace weil {

struct WeilAlgebra::Data {
  std::vector<std::string> names;
  std::vector<Polynomial> generators;
  unsigned k;
  ReductionBasis reduction;
  std::vector<Monomial> basis;
  std::map<Monomial, std::size_t> index;
  std::vector<std::vector<ProductTerm>> table;  // row-major dim x dim
};

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

WeilAlgebra::WeilAlgebra(std::vector<std::string> variables, std::vector<Polynomial> generators,
                         unsigned nilpotency_order) {
  if (nilpotency_order == 0) throw DimensionMismatch("nilpotency order must be at least 1");
  std::set<std::string> seen;
  for (const auto& v : variables) {
    if (!valid_identifier(v)) throw DimensionMismatch("invalid variable name '" + v + "'");
    if (!seen.insert(v).second) throw DimensionMismatch("duplicate variable name '" + v + "'");
  }
  const std::size_t n = variables.size();
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const auto& g = generators[i];
    if (g.nvars() != n)
      throw DimensionMismatch("generator " + std::to_string(i) + " is over " +
                              std::to_string(g.nvars()) + " variables, expected " + std::to_string(n));
    if (g.constant_term() != 0)
      throw ImproperIdeal("generator " + to_string(g, variables) +
                          " has a nonzero constant term; the quotient is the zero ring");
  }

  auto reduction = ReductionBasis::build(generators, n, nilpotency_order);
  if (reduction.is_pivot(Monomial::one(n)))
    throw ImproperIdeal("the ideal contains a unit; the quotient is the zero ring");

  auto data = std::make_shared<Data>(Data{std::move(variables), std::move(generators), nilpotency_order,
                                          std::move(reduction), {}, {}, {}});
  for (const auto& m : monomials_below(n, nilpotency_order))
    if (!data->reduction.is_pivot(m)) {
      data->index.emplace(m, data->basis.size());
      data->basis.push_back(m);
    }

  const std::size_t dim = data->basis.size();
  data->table.resize(dim * dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j) {
      Polynomial nf = data->reduction.normal_form(Polynomial::term(data->basis[i] * data->basis[j], 1));
      std::vector<ProductTerm> terms;
      for (const auto& [m, c] : nf.terms()) terms.push_back({data->index.at(m), StructureCoefficient(c)});
      data->table[i * dim + j] = terms;
      data->table[j * dim + i] = std::move(terms);
    }
  data_ = std::move(data);
}

WeilAlgebra WeilAlgebra::from_presentation(const WeilPresentation& pres) {
  std::vector<Polynomial> gens;
  gens.reserve(pres.relations.size());
  for (const auto& r : pres.relations) gens.push_back(parse_polynomial(r, pres.variables));
  return WeilAlgebra(pres.variables, std::move(gens), pres.nilpotency);
}

WeilAlgebra WeilAlgebra::reals() {
  static const WeilAlgebra instance({}, {}, 1);
  return instance;
}

std::size_t WeilAlgebra::nvars() const noexcept { return data_->names.size(); }
const std::vector<std::string>& WeilAlgebra::variables() const noexcept { return data_->names; }
const std::vector<Polynomial>& WeilAlgebra::generators() const noexcept { return data_->generators; }
unsigned WeilAlgebra::nilpotency_order() const noexcept { return data_->k; }
const ReductionBasis& WeilAlgebra::reduction() const noexcept { return data_->reduction; }
std::span<const Monomial> WeilAlgebra::basis() const noexcept { return data_->basis; }
std::size_t WeilAlgebra::dimension() const noexcept { return data_->basis.size(); }

std::optional<std::size_t> WeilAlgebra::basis_index(const Monomial& m) const {
  auto it = data_->index.find(m);
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

std::span<const ProductTerm> WeilAlgebra::product(std::size_t i, std::size_t j) const {
  return data_->table[i * dimension() + j];
}

Polynomial WeilAlgebra::normal_form(const Polynomial& p) const { return data_->reduction.normal_form(p); }

std::vector<Rational> WeilAlgebra::coordinates(const Polynomial& p) const {
  std::vector<Rational> coords(dimension());
  const Polynomial nf = normal_form(p);
  for (const auto& [m, c] : nf.terms()) coords[data_->index.at(m)] = c;
  return coords;
}

Polynomial WeilAlgebra::representative(std::span<const Rational> coords) const {
  if (coords.size() != dimension())
    throw DimensionMismatch("expected " + std::to_string(dimension()) + " coordinates, got " +
                            std::to_string(coords.size()));
  Polynomial p(nvars());
  for (std::size_t i = 0; i < coords.size(); ++i) p.add_term(data_->basis[i], coords[i]);
  return p;
}

std::vector<Polynomial> WeilAlgebra::ideal_generators() const {
  std::vector<Polynomial> out = data_->generators;
  for (const auto& m : monomials_of_degree(nvars(), data_->k)) out.push_back(Polynomial::term(m, 1));
  return out;
}

std::string WeilAlgebra::summary() const {
  std::string s = "dimension " + std::to_string(dimension()) + ", basis [";
  for (std::size_t i = 0; i < data_->basis.size(); ++i) {
    if (i) s += ", ";
    s += to_string(data_->basis[i], data_->names);
  }
  return s + "]";
}

bool operator==(const WeilAlgebra& a, const WeilAlgebra& b) {
  if (a.data_ == b.data_) return true;
  return a.data_->k == b.data_->k && a.data_->names == b.data_->names &&
         a.data_->reduction == b.data_->reduction;
}

// ---------------------------------------------------------------------------

WeilAlgebra jet_algebra(unsigned order, std::string variable) {
  std::vector<std::string> names{std::move(variable)};
  std::vector<Polynomial> gens{Polynomial::term(Monomial::variable(1, 0, order + 1), 1)};
  return WeilAlgebra(std::move(names), std::move(gens), order + 1);
}

std::vector<std::string> preset_names() { return {"dual", "jet2", "jet3", "d2"}; }

bool is_preset(std::string_view name) {
  auto names = preset_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

WeilAlgebra preset(std::string_view name) {
  if (name == "dual") return jet_algebra(1, "x");
  if (name == "jet2") return jet_algebra(2, "t");
  if (name == "jet3") return jet_algebra(3, "t");
  if (name == "d2") {
    std::vector<std::string> names{"x", "y"};
    std::vector<Polynomial> gens{parse_polynomial("x^2", names), parse_polynomial("y^2", names),
                                 parse_polynomial("x*y", names)};
    return WeilAlgebra(std::move(names), std::move(gens), 2);
  }
  throw ConfigError("unknown algebra preset '" + std::string(name) + "'");
}

}  // namespace weil

#include "weil/monomial.hpp"

#include <algorithm>
#include <numeric>

#include "weil/errors.hpp"

namespace weil {

Monomial::Monomial(std::vector<unsigned> exponents)
    : exponents_(std::move(exponents)),
      degree_(std::accumulate(exponents_.begin(), exponents_.end(), 0u)) {}

Monomial Monomial::one(std::size_t nvars) { return Monomial(std::vector<unsigned>(nvars, 0)); }

Monomial Monomial::variable(std::size_t nvars, std::size_t index, unsigned power) {
  std::vector<unsigned> e(nvars, 0);
  e.at(index) = power;
  return Monomial(std::move(e));
}

unsigned Monomial::block_degree(std::size_t first, std::size_t count) const {
  unsigned d = 0;
  for (std::size_t i = first; i < first + count; ++i) d += exponents_[i];
  return d;
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (other.nvars() != nvars())
    throw DimensionMismatch("monomial product over " + std::to_string(nvars()) + " and " +
                            std::to_string(other.nvars()) + " variables");
  std::vector<unsigned> e(exponents_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.exponents_[i];
  Monomial m;
  m.exponents_ = std::move(e);
  m.degree_ = degree_ + other.degree_;
  return m;
}

Monomial Monomial::reindexed(std::size_t nvars, std::size_t offset) const {
  if (offset + exponents_.size() > nvars)
    throw DimensionMismatch("reindexing past the target variable count");
  std::vector<unsigned> e(nvars, 0);
  std::copy(exponents_.begin(), exponents_.end(), e.begin() + static_cast<std::ptrdiff_t>(offset));
  return Monomial(std::move(e));
}

Monomial Monomial::slice(std::size_t first, std::size_t count) const {
  return Monomial(std::vector<unsigned>(exponents_.begin() + static_cast<std::ptrdiff_t>(first),
                                        exponents_.begin() + static_cast<std::ptrdiff_t>(first + count)));
}

Monomial Monomial::concat(const Monomial& other) const {
  std::vector<unsigned> e(exponents_);
  e.insert(e.end(), other.exponents_.begin(), other.exponents_.end());
  return Monomial(std::move(e));
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.exponents_.begin(), a.exponents_.end(),
                                                b.exponents_.begin(), b.exponents_.end());
}

namespace {

void compositions(std::size_t nvars, unsigned remaining, std::vector<unsigned>& prefix,
                  std::vector<Monomial>& out) {
  if (prefix.size() + 1 == nvars) {
    prefix.push_back(remaining);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (unsigned e = 0; e <= remaining; ++e) {
    prefix.push_back(e);
    compositions(nvars, remaining - e, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (degree == 0) out.push_back(Monomial::one(0));
    return out;
  }
  std::vector<unsigned> prefix;
  compositions(nvars, degree, prefix, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Monomial> monomials_below(std::size_t nvars, unsigned bound) {
  std::vector<Monomial> out;
  for (unsigned d = 0; d < bound; ++d) {
    auto level = monomials_of_degree(nvars, d);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::vector<Monomial> monomials_block_bounded(std::span<const std::size_t> blocks, unsigned bound) {
  std::vector<Monomial> out{Monomial::one(0)};
  for (std::size_t size : blocks) {
    auto block = monomials_below(size, bound + 1);
    std::vector<Monomial> next;
    next.reserve(out.size() * block.size());
    for (const auto& a : out)
      for (const auto& b : block) next.push_back(a.concat(b));
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(const Monomial& m, std::span<const std::string> names) {
  if (m.is_one()) return "1";
  std::string s;
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += i < names.size() ? names[i] : "t" + std::to_string(i);
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s;
}

}  // namespace weil

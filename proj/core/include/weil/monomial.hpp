#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace weil {

/// A power product x_0^e_0 ... x_{n-1}^e_{n-1}.
///
/// Monomials are totally ordered graded-lexicographically: lower total degree
/// first, ties broken by comparing exponent vectors lexicographically. The
/// constant monomial is therefore the smallest monomial in any variable count.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<unsigned> exponents);

  static Monomial one(std::size_t nvars);
  static Monomial variable(std::size_t nvars, std::size_t index, unsigned power = 1);

  std::size_t nvars() const noexcept { return exponents_.size(); }
  unsigned degree() const noexcept { return degree_; }
  unsigned operator[](std::size_t i) const { return exponents_[i]; }
  std::span<const unsigned> exponents() const noexcept { return exponents_; }
  bool is_one() const noexcept { return degree_ == 0; }

  /// Degree restricted to variables [first, first + count).
  unsigned block_degree(std::size_t first, std::size_t count) const;

  Monomial operator*(const Monomial& other) const;

  /// Embeds into `nvars` variables with this monomial's exponents starting at
  /// `offset`.
  Monomial reindexed(std::size_t nvars, std::size_t offset) const;

  /// Exponents [first, first + count) as a monomial in `count` variables.
  Monomial slice(std::size_t first, std::size_t count) const;

  /// Concatenation of exponent vectors.
  Monomial concat(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

 private:
  std::vector<unsigned> exponents_;
  unsigned degree_ = 0;
};

/// Every monomial of total degree exactly `degree`, ascending.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree);

/// Every monomial of total degree < `bound`, ascending.
std::vector<Monomial> monomials_below(std::size_t nvars, unsigned bound);

/// Every monomial whose degree in each block is <= `bound`, ascending. The
/// blocks partition the variables in order.
std::vector<Monomial> monomials_block_bounded(std::span<const std::size_t> blocks, unsigned bound);

/// `1`, `x`, `x^2*y`, ...; variables without names print as t0, t1, ...
std::string to_string(const Monomial& m, std::span<const std::string> names = {});

}  // namespace weil

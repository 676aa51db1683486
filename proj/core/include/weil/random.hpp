#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "weil/element.hpp"

namespace weil {

/// Seeded generator with platform-independent bounded draws.
///
/// std::uniform_int_distribution is implementation-defined, so draws reduce
/// the raw 64-bit output directly; the tiny modulo bias is irrelevant here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  /// Uniform in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }
  bool chance(unsigned percent) { return below(100) < percent; }

  /// Small rational p/q with |p| <= 5 and 1 <= q <= 4.
  Rational small_rational() { return fraction(range(-5, 5), range(1, 4)); }
  /// Small rational that is nonzero.
  Rational nonzero_rational() {
    Rational q = small_rational();
    return q == 0 ? Rational(1) : q;
  }

  template <class T>
  const T& pick(const std::vector<T>& items) {
    return items[below(items.size())];
  }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer; mixes a seed with a label and an index.
std::uint64_t mix_seed(std::uint64_t seed, std::string_view label, std::uint64_t index);

/// Exact element with small random coordinates; roughly a third are zero.
Element<Rational> random_element(const WeilAlgebra& w, Rng& rng);
/// Random element whose augmentation is zero.
Element<Rational> random_nilpotent(const WeilAlgebra& w, Rng& rng);
/// Random polynomial over nvars variables with at most `terms` terms of
/// degree < max_degree.
Polynomial random_polynomial(std::size_t nvars, unsigned max_degree, unsigned terms, Rng& rng);

}  // namespace weil

#include "weil/random.hpp"

namespace weil {

std::uint64_t mix_seed(std::uint64_t seed, std::string_view label, std::uint64_t index) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(seed);
  for (unsigned char c : label) h = mix(h ^ c);
  return mix(h ^ index);
}

Element<Rational> random_element(const WeilAlgebra& w, Rng& rng) {
  std::vector<Rational> coords(w.dimension());
  for (auto& c : coords)
    if (!rng.chance(33)) c = rng.small_rational();
  return Element<Rational>(w, std::move(coords));
}

Element<Rational> random_nilpotent(const WeilAlgebra& w, Rng& rng) {
  auto a = random_element(w, rng);
  a.coord(0) = 0;
  return a;
}

Polynomial random_polynomial(std::size_t nvars, unsigned max_degree, unsigned terms, Rng& rng) {
  Polynomial p(nvars);
  auto monos = monomials_below(nvars, max_degree);
  if (monos.empty()) return p;
  for (unsigned t = 0; t < terms; ++t) p.add_term(rng.pick(monos), rng.small_rational());
  return p;
}

}  // namespace weil

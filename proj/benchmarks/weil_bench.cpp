#include <benchmark/benchmark.h>

#include <vector>

#include "weil/algebra.hpp"
#include "weil/cahiers.hpp"
#include "weil/jet.hpp"
#include "weil/random.hpp"

using namespace weil;

namespace {

// Building an algebra means reducing the ideal to echelon form and filling
// the product table; jet_algebra(k) has k + 1 basis monomials.
void BM_BuildJetAlgebra(benchmark::State& state) {
  const auto order = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(jet_algebra(order, "t").dimension());
}
BENCHMARK(BM_BuildJetAlgebra)->Arg(2)->Arg(6)->Arg(12);

void BM_MultiplyExact(benchmark::State& state) {
  const WeilAlgebra w = preset(state.range(0) == 0 ? "d2" : "jet3");
  Rng rng(1);
  const auto a = random_element(w, rng);
  const auto b = random_element(w, rng);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_MultiplyExact)->Arg(0)->Arg(1);

void BM_LiftRealJet(benchmark::State& state) {
  const auto order = static_cast<unsigned>(state.range(0));
  const WeilAlgebra w = jet_algebra(order);
  const SmoothMap f = parse_smooth_map("exp(sin(t)) / (1 + t^2) + sqrt(2 + cos(t))");
  const std::vector<Element<double>> pt{Element<double>::constant(w, 0.7) + Element<double>::variable(w, 0)};
  for (auto _ : state) benchmark::DoNotOptimize(taylor_lift<double>(f, w, pt, 0.0));
}
BENCHMARK(BM_LiftRealJet)->Arg(1)->Arg(4)->Arg(8);

void BM_LiftExactPolynomial(benchmark::State& state) {
  const WeilAlgebra w = preset("d2");
  const SmoothMap f = parse_smooth_map("(x^3*y - 2*x*y^2 + 5, (x + y)^4)");
  const std::vector<Element<Rational>> pt{Element<Rational>::constant(w, Rational(1, 3)) + Element<Rational>::variable(w, 0),
                                          Element<Rational>::constant(w, Rational(-2)) + Element<Rational>::variable(w, 1)};
  for (auto _ : state) benchmark::DoNotOptimize(taylor_lift<Rational>(f, w, pt, Rational(0)));
}
BENCHMARK(BM_LiftExactPolynomial);

// Round trip through the currying bijection on one random carrier element.
void BM_CurryRoundTrip(benchmark::State& state) {
  const auto d = static_cast<unsigned>(state.range(0));
  const CurryIso iso(1, DObject(2, preset("jet3")), DObject(2, preset("d2")), d);
  Rng rng(3);
  const JValue v = iso.joint_space().random(rng);
  for (auto _ : state) benchmark::DoNotOptimize(iso.uncurry(iso.curry(v)));
  state.counters["dimension"] = static_cast<double>(iso.joint_space().dimension());
}
BENCHMARK(BM_CurryRoundTrip)->DenseRange(0, 3);

}  // namespace

BENCHMARK_MAIN();

// Acceptance run: one [PASS]/[FAIL] line per criterion, exit status 1 if
// any criterion fails. Each criterion also carries a wall-clock budget;
// overrunning it counts as a failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "support/symbolic.hpp"
#include "weil/cahiers.hpp"
#include "weil/errors.hpp"
#include "weil/harness.hpp"
#include "weil/jet.hpp"
#include "weil/laws.hpp"
#include "weil/prolong.hpp"
#include "weil/random.hpp"

using namespace weil;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;  // what was covered, or the first thing that broke
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

int run_criterion(const char* id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (out.ok && secs > budget_s) out = fail("over the " + std::to_string(budget_s) + " s budget");
  std::printf("[%s] %s %s: %s (%.2f s)\n", out.ok ? "PASS" : "FAIL", id, title, out.note.c_str(), secs);
  std::fflush(stdout);
  return out.ok ? 0 : 1;
}

std::string first_witness(const SuiteReport& r) {
  return r.name + " case " + std::to_string(r.witnesses.front().case_seed) + ": " + r.witnesses.front().detail;
}

// Lift of e through w at base + x, in real mode.
Element<double> lift_real(const Expr& e, const WeilAlgebra& w, double base) {
  std::vector<Element<double>> pt{Element<double>::constant(w, base) + Element<double>::variable(w, 0)};
  return taylor_lift<double>(SmoothMap(1, {e}), w, pt, 0.0).front();
}

// -- AC1 ---------------------------------------------------------------------

Outcome derivatives() {
  const auto& corpus = oracle::corpus();
  if (corpus.size() < 30) return fail("corpus has only " + std::to_string(corpus.size()) + " expressions");
  const WeilAlgebra dual = preset("dual");
  const WeilAlgebra jet4 = jet_algebra(4);
  for (const auto& entry : corpus) {
    const Expr e = parse_expr(entry.text);
    const double a = entry.base;
    const double lifted = lift_real(e, dual, a)[1];
    const double fd = oracle::central_difference(e, a, 1e-5);
    const double sym = oracle::eval1(oracle::differentiate(e), a);
    if (!oracle::close(lifted, fd, 1e-6))
      return fail(entry.text + ": dual " + format_double(lifted) + " vs difference " + format_double(fd));
    if (!oracle::close(lifted, sym, 1e-12))
      return fail(entry.text + ": dual " + format_double(lifted) + " vs symbolic " + format_double(sym));

    const Element<double> jet = lift_real(e, jet4, a);
    double factorial = 1;
    for (unsigned j = 0; j <= 4; ++j) {
      if (j > 0) factorial *= j;
      const double got = jet[j] * factorial;
      const double want = oracle::eval1(oracle::nth_derivative(e, j), a);
      if (!oracle::close(got, want, 1e-9))
        return fail(entry.text + ": order " + std::to_string(j) + " jet " + format_double(got) + " vs symbolic " +
                    format_double(want));
    }
  }
  return {true, std::to_string(corpus.size()) + " expressions, dual and order-4 jets"};
}

// -- AC2 ---------------------------------------------------------------------

Outcome ring_laws() {
  std::vector<WeilAlgebra> algebras;
  for (const auto& name : preset_names()) algebras.push_back(preset(name));
  Rng rng(0x5eed);
  while (algebras.size() < 12) algebras.push_back(WeilAlgebra::from_presentation(random_presentation(rng)));
  std::size_t triples = 0;
  for (std::size_t i = 0; i < algebras.size(); ++i) {
    if (algebras[i].dimension() > 30) return fail(algebras[i].summary() + " exceeds dimension 30");
    const auto r = check_ring_laws(algebras[i], 200, mix_seed(2, "ac2", i));
    if (!r.passed()) return fail(first_witness(r));
    triples += r.cases;
  }
  return {true, std::to_string(algebras.size()) + " algebras, " + std::to_string(triples) + " triples"};
}

// -- AC3 ---------------------------------------------------------------------

Outcome associativity() {
  const std::vector<std::string> names = {"dual", "jet2", "jet3", "d2"};
  std::size_t pairs = 0;
  for (const auto& a : names)
    for (const auto& b : names) {
      Rng rng(mix_seed(3, a + b, 0));
      const std::size_t m = 2;
      std::vector<Expr> exprs;
      for (int e = 0; e < 20; ++e)
        exprs.push_back(polynomial_expr(random_polynomial(m, 4, static_cast<unsigned>(rng.range(1, 4)), rng)));
      const auto r = AssocIso(m, preset(a), preset(b)).verify(exprs, 20, rng.next());
      if (!r.passed()) return fail(a + " x " + b + ": " + first_witness(r));
      ++pairs;
    }
  return {true, std::to_string(pairs) + " ordered pairs, 20 expressions each"};
}

// -- AC4 and AC5 use the suites' own generators at a larger case count -------

SuiteConfig scaled(const std::string& suite, std::size_t cases, std::uint64_t seed) {
  SuiteConfig c = default_config();
  c.suites = {suite};
  c.cases[suite] = cases;
  c.seed = seed;
  return c;
}

Outcome product_preservation() {
  const auto r = run_suite("product_preservation", scaled("product_preservation", 200, 4));
  if (!r.passed()) return fail(first_witness(r));
  if (r.cases < 200) return fail("only " + std::to_string(r.cases) + " instances ran");
  return {true, std::to_string(r.cases) + " (f, g, W) instances"};
}

// Constant-free polynomial composed with a primitive that has rational
// Taylor coefficients at the origin, so exact lifts exist at nilpotent points.
Expr vanishing_transcendental(std::size_t arity, Rng& rng) {
  Polynomial p = random_polynomial(arity, 3, 2, rng);
  Polynomial q(arity);
  for (const auto& [mono, c] : p.terms())
    if (!mono.is_one()) q.add_term(mono, c);
  if (q.is_zero()) q = Polynomial::variable(arity, 0);
  const Expr inner = polynomial_expr(q);
  switch (rng.below(3)) {
    case 0: return sin(inner);
    case 1: return exp(inner) - Expr::constant(1);
    default: return log(Expr::constant(1) + inner);
  }
}

Outcome bifunctor_laws() {
  const std::vector<std::string> names = {"dual", "jet2", "jet3", "d2"};
  std::size_t lift_instances = 0, natural_instances = 0;
  for (std::uint64_t i = 0; lift_instances < 200; ++i) {
    if (i > 1000) return fail("could not assemble 200 exact lift instances");
    Rng rng(mix_seed(5, "lift", i));
    const WeilAlgebra w = preset(rng.pick(names));
    const auto a = static_cast<std::size_t>(rng.range(1, 2));
    const auto b = static_cast<std::size_t>(rng.range(1, 2));
    SmoothMap f = random_polynomial_map(a, b, 3, rng);
    if (rng.chance(40)) {
      std::vector<Expr> outs = f.outputs();
      outs[0] = vanishing_transcendental(a, rng);
      f = SmoothMap(a, outs);
    }
    const SmoothMap g = random_polynomial_map(b, static_cast<std::size_t>(rng.range(1, 2)), 3, rng);
    const auto r = check_lift_functoriality(w, f, g, 3, rng.next());
    if (!r.passed()) return fail(first_witness(r));
    if (r.cases > 0) ++lift_instances;
  }
  for (std::uint64_t i = 0; i < 200; ++i) {
    Rng rng(mix_seed(5, "natural", i));
    const WeilAlgebra w1 = preset(rng.pick(names)), w2 = preset(rng.pick(names));
    const WeilMorphism psi = random_weil_morphism(w1, w2, rng);
    const SmoothMap phi = random_polynomial_map(static_cast<std::size_t>(rng.range(1, 2)),
                                                static_cast<std::size_t>(rng.range(1, 2)), 3, rng);
    const auto r = check_naturality(phi, psi, 3, rng.next());
    if (!r.passed()) return fail(first_witness(r));
    ++natural_instances;
  }
  return {true, std::to_string(lift_instances) + " lift instances, " + std::to_string(natural_instances) +
                    " naturality squares, all exact"};
}

// -- AC6 ---------------------------------------------------------------------

// Monomials of degree <= d in n variables, counted by brute force.
std::size_t count_monomials(std::size_t n, unsigned d) {
  if (n == 0) return 1;
  std::size_t total = 0;
  for (unsigned e = 0; e <= d; ++e) total += count_monomials(n - 1, d - e);
  return total;
}

Outcome fragment_isomorphisms() {
  const std::vector<WeilAlgebra> small = {WeilAlgebra::reals(), preset("dual"), preset("jet2"), preset("jet3"),
                                          preset("d2")};
  std::size_t isos = 0;
  for (std::size_t n = 0; n <= 2; ++n)
    for (std::size_t m = 0; m <= 2; ++m)
      for (unsigned d = 0; d <= 3; ++d)
        for (const auto& w1 : small)
          for (const auto& w2 : small) {
            const auto r = CurryIso(1, DObject(n, w1), DObject(m, w2), d).verify(2, mix_seed(6, "curry", isos));
            if (!r.passed()) return fail(first_witness(r));
            ++isos;
          }

  std::size_t shapes = 0;
  for (std::size_t p = 1; p <= 3; ++p)
    for (std::size_t n = 0; n <= 3; ++n)
      for (unsigned d = 0; d <= 4; ++d)
        for (const auto& w : small) {
          const std::size_t brute = p * count_monomials(n, d) * w.dimension();
          const std::vector<std::size_t> blocks{n};
          const JSpace j(FragmentSpace::euclidean(p), DObject(n, w), d);
          if (j.dimension() != brute || JSpace::dimension_formula(p, blocks, d, w.dimension()) != brute)
            return fail("dimension of J(R^" + std::to_string(p) + ") at n=" + std::to_string(n) +
                        ", d=" + std::to_string(d) + " disagrees with enumeration " + std::to_string(brute));
          ++shapes;
        }
  // Two blocks: the bound applies per block, so the count is a product.
  for (std::size_t n1 = 0; n1 <= 2; ++n1)
    for (std::size_t n2 = 0; n2 <= 2; ++n2)
      for (unsigned d = 0; d <= 3; ++d) {
        const std::size_t brute = count_monomials(n1, d) * count_monomials(n2, d) * 4;
        const JSpace j(FragmentSpace::euclidean(1), dobj_coproduct(DObject(n1, preset("dual")), DObject(n2, preset("dual"))),
                       d);
        if (j.dimension() != brute) return fail("two-block dimension disagrees with enumeration");
        ++shapes;
      }

  const SuiteConfig grid = default_config();
  for (const char* suite : {"j_product", "j_prolongation"}) {
    const auto r = run_suite(suite, grid);
    if (!r.passed()) return fail(first_witness(r));
  }
  return {true, std::to_string(isos) + " curry isomorphisms exhaustively, " + std::to_string(shapes) +
                    " dimension counts, product and prolongation laws on the default grid"};
}

// -- AC7 ---------------------------------------------------------------------

Outcome conjecture_probe() {
  SuiteConfig c = default_config();
  c.suites = {"c_functoriality"};
  c.seed = 7;
  const auto r = run_suite("c_functoriality", c);
  const std::size_t pairs = c.cases_for("c_functoriality");
  if (pairs < 100) return fail("only " + std::to_string(pairs) + " composable pairs");
  if (!r.outcome) return fail("no outcome recorded");
  if (*r.outcome == "evidence-for") {
    if (!r.passed()) return fail("evidence-for reported alongside failures");
    return {true, "evidence-for over " + std::to_string(r.cases) + " cases (" + std::to_string(pairs) + " pairs)"};
  }
  if (*r.outcome != "counterexample" || r.passed()) return fail("inconsistent outcome " + *r.outcome);
  // A counterexample is acceptable only if every witness replays alone.
  for (const auto& w : r.witnesses)
    if (replay_case("c_functoriality", c, w.case_seed).passed())
      return fail("witness " + std::to_string(w.case_seed) + " does not replay");
  return {true, "counterexample with " + std::to_string(r.failures()) + " replayable witnesses"};
}

// -- AC8 ---------------------------------------------------------------------

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "weil_acceptance";
  std::filesystem::create_directories(dir);
  const std::string config = std::string(WEIL_TEST_DATA) + "/default_config.json";
  std::vector<std::string> reports;
  for (int run = 0; run < 2; ++run) {
    const auto out = dir / ("report" + std::to_string(run) + ".json");
    std::filesystem::remove(out);
    const std::string cmd = std::string("\"") + WEIL_CLI + "\" verify --config \"" + config + "\" --out \"" +
                            out.string() + "\" --seed 424242 > /dev/null";
    const int status = std::system(cmd.c_str());
    if (status != 0) return fail("verify exited with status " + std::to_string(status));
    reports.push_back(slurp(out));
  }
  if (reports[0].empty()) return fail("empty report");
  if (reports[0] != reports[1]) return fail("reports differ");
  return {true, "two verify runs, " + std::to_string(reports[0].size()) + " identical bytes"};
}

}  // namespace

int main() {
  int failures = 0;
  failures += run_criterion("AC1", "derivative correctness", 5, derivatives);
  failures += run_criterion("AC2", "quotient-ring laws", 10, ring_laws);
  failures += run_criterion("AC3", "tensor associativity", 10, associativity);
  failures += run_criterion("AC4", "product preservation", 10, product_preservation);
  failures += run_criterion("AC5", "bifunctor laws", 10, bifunctor_laws);
  failures += run_criterion("AC6", "fragment isomorphisms", 30, fragment_isomorphisms);
  failures += run_criterion("AC7", "functoriality probe", 30, conjecture_probe);
  failures += run_criterion("AC8", "report determinism", 120, determinism);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

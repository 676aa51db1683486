#include "weil/harness.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "weil/cahiers.hpp"
#include "weil/errors.hpp"
#include "weil/laws.hpp"
#include "weil/prolong.hpp"
#include "weil/random.hpp"

namespace weil {

namespace {

using json = nlohmann::json;

const std::string kProbe = "c_functoriality";

// -- Case generators ---------------------------------------------------------

const WeilAlgebra& pick_algebra(const SuiteConfig& config, Rng& rng) {
  if (config.algebras.empty()) throw ConfigError("the algebra grid is empty");
  return config.algebras[rng.below(config.algebras.size())];
}

Polynomial without_constant(const Polynomial& p) {
  Polynomial out(p.nvars());
  for (const auto& [m, c] : p.terms())
    if (!m.is_one()) out.add_term(m, c);
  return out;
}

/// A random map whose transcendental outputs have exact series at points
/// with zero augmentation: sin, cos and exp of a polynomial without constant
/// term, log and sqrt of 1 plus one. With `vanishing`, every output also
/// sends the origin to the origin.
SmoothMap random_smooth_map(std::size_t arity, std::size_t coarity, bool transcendental, bool vanishing, Rng& rng) {
  static const Primitive vanishing_primitives[] = {Primitive::Sin, Primitive::Log};
  static const Primitive all_primitives[] = {Primitive::Sin, Primitive::Cos, Primitive::Exp, Primitive::Log,
                                             Primitive::Sqrt};
  std::vector<Expr> outputs;
  for (std::size_t i = 0; i < coarity; ++i) {
    Polynomial p = random_polynomial(arity, 3, static_cast<unsigned>(rng.range(1, 3)), rng);
    if (vanishing) p = without_constant(p);
    if (!transcendental || arity == 0 || !rng.chance(60)) {
      outputs.push_back(polynomial_expr(p));
      continue;
    }
    const Expr arg = polynomial_expr(without_constant(p));
    const Primitive prim = vanishing ? vanishing_primitives[rng.below(2)] : all_primitives[rng.below(5)];
    const bool shifted = prim == Primitive::Log || prim == Primitive::Sqrt;
    outputs.push_back(Expr::apply(prim, shifted ? Expr::constant(Rational(1)) + arg : arg));
  }
  return SmoothMap(arity, std::move(outputs));
}

std::vector<DObject> probe_objects(const SuiteConfig& config) {
  std::vector<DObject> out;
  for (std::size_t n : config.n_grid)
    for (const auto& w : config.algebras) out.emplace_back(n, w);
  return out;
}

/// Decodes index into digits of the given radices, least significant last.
std::vector<std::size_t> digits(std::size_t index, std::initializer_list<std::size_t> radices) {
  std::vector<std::size_t> out(radices.size());
  std::size_t pos = radices.size();
  for (auto it = std::rbegin(radices); it != std::rend(radices); ++it) {
    out[--pos] = index % *it;
    index /= *it;
  }
  return out;
}

SuiteReport eval_j_dimension_case(const DObject& c, unsigned d) {
  SuiteReport r{"eval_j_dimension", 1, {}, std::nullopt};
  for (std::size_t p = 0; p <= 2; ++p) {
    const JSpace j(FragmentSpace::euclidean(p), c, d);
    const std::size_t formula = JSpace::dimension_formula(p, c.blocks(), d, c.weil().dimension());
    // Total-degree enumeration is a different code path from the block
    // enumeration behind JSpace.
    const std::size_t counted = p * monomials_below(c.base_arity(), d + 1).size() * c.weil().dimension();
    if (j.dimension() != formula || j.dimension() != counted) {
      r.fail(0, "J(R^" + std::to_string(p) + ")(" + c.to_string() + ") at degree " + std::to_string(d) +
                    " enumerates " + std::to_string(j.dimension()) + ", formula gives " + std::to_string(formula) +
                    ", count gives " + std::to_string(counted));
      return r;
    }
    for (std::size_t k = 0; k < j.dimension(); ++k) {
      const auto coords = j.coordinates(j.basis_vector(k));
      for (std::size_t i = 0; i < coords.size(); ++i)
        if (coords[i] != (i == k ? 1 : 0)) {
          r.fail(0, "basis vector " + std::to_string(k) + " of " + c.to_string() + " has wrong coordinates");
          return r;
        }
    }
  }
  return r;
}

// -- Registry ------------------------------------------------------------------

struct SuiteDef {
  std::string name;
  std::function<std::size_t(const SuiteConfig&)> count;
  std::function<SuiteReport(const SuiteConfig&, std::size_t index, std::uint64_t case_seed)> run;
};

std::size_t algebra_count(const SuiteConfig& c) { return c.algebras.size(); }

std::vector<SuiteDef> make_registry() {
  std::vector<SuiteDef> defs;
  auto random_count = [](const std::string& name) {
    return [name](const SuiteConfig& c) { return c.cases_for(name); };
  };

  defs.push_back({"ring_laws", random_count("ring_laws"), [](const SuiteConfig& c, std::size_t i, std::uint64_t seed) {
                    Rng rng(seed);
                    // The configured algebras first, then random presentations.
                    const WeilAlgebra w = i < c.algebras.size() ? c.algebras[i]
                                                                : WeilAlgebra::from_presentation(random_presentation(rng));
                    return check_ring_laws(w, 20, seed);
                  }});
  defs.push_back({"morphism_laws", random_count("morphism_laws"),
                  [](const SuiteConfig& c, std::size_t, std::uint64_t seed) {
                    Rng rng(seed);
                    const WeilAlgebra w1 = pick_algebra(c, rng), w2 = pick_algebra(c, rng), w3 = pick_algebra(c, rng);
                    const WeilMorphism phi = random_weil_morphism(w1, w2, rng);
                    const WeilMorphism psi = random_weil_morphism(w2, w3, rng);
                    return check_morphism_laws(phi, psi, 5, seed);
                  }});
  defs.push_back({"tensor_laws", random_count("tensor_laws"),
                  [](const SuiteConfig& c, std::size_t, std::uint64_t seed) {
                    Rng rng(seed);
                    const WeilAlgebra w1 = pick_algebra(c, rng), w2 = pick_algebra(c, rng);
                    return check_tensor_laws(w1, w2, 5, seed);
                  }});
  defs.push_back({"lift_functoriality", random_count("lift_functoriality"),
                  [](const SuiteConfig& c, std::size_t, std::uint64_t seed) {
                    Rng rng(seed);
                    const WeilAlgebra w = pick_algebra(c, rng);
                    const bool transcendental = rng.chance(40);
                    const auto a = static_cast<std::size_t>(rng.range(1, 2));
                    const auto b = static_cast<std::size_t>(rng.range(1, 2));
                    const auto d = static_cast<std::size_t>(rng.range(1, 2));
                    const SmoothMap f = random_smooth_map(a, b, transcendental, transcendental, rng);
                    const SmoothMap g = random_smooth_map(b, d, transcendental, false, rng);
                    return check_lift_functoriality(w, f, g, 3, seed);
                  }});
  defs.push_back({"naturality", random_count("naturality"),
                  [](const SuiteConfig& c, std::size_t, std::uint64_t seed) {
                    Rng rng(seed);
                    const WeilAlgebra w1 = pick_algebra(c, rng), w2 = pick_algebra(c, rng);
                    const WeilMorphism psi = random_weil_morphism(w1, w2, rng);
                    const SmoothMap phi = random_smooth_map(static_cast<std::size_t>(rng.range(1, 2)),
                                                            static_cast<std::size_t>(rng.range(1, 2)), rng.chance(40),
                                                            false, rng);
                    return check_naturality(phi, psi, 3, seed, c.tolerance);
                  }});
  defs.push_back({"equiv_laws", random_count("equiv_laws"),
                  [](const SuiteConfig& c, std::size_t, std::uint64_t seed) {
                    Rng rng(seed);
                    const WeilAlgebra w = pick_algebra(c, rng);
                    const SmoothMap f =
                        random_smooth_map(w.nvars(), static_cast<std::size_t>(rng.range(1, 2)), rng.chance(30), false, rng);
                    return check_equiv_laws(w, f, 4, seed);
                  }});
  defs.push_back({"product_preservation", random_count("product_preservation"),
                  [](const SuiteConfig& c, std::size_t, std::uint64_t seed) {
                    Rng rng(seed);
                    const WeilAlgebra w = pick_algebra(c, rng);
                    const auto a = static_cast<std::size_t>(rng.range(0, 2));
                    const auto b = static_cast<std::size_t>(rng.range(1, 2));
                    const SmoothMap f = random_smooth_map(w.nvars(), a + b, rng.chance(40), false, rng);
                    return check_product_preservation(FragmentSpace::euclidean(a), FragmentSpace::euclidean(b), w, f, 4,
                                                      seed);
                  }});
  defs.push_back({"assoc_iso", [](const SuiteConfig& c) { return algebra_count(c) * algebra_count(c); },
                  [](const SuiteConfig& c, std::size_t i, std::uint64_t seed) {
                    Rng rng(seed);
                    const auto ij = digits(i, {c.algebras.size(), c.algebras.size()});
                    const std::size_t m = 1 + i % 2;
                    std::vector<Expr> exprs;
                    for (int e = 0; e < 20; ++e)
                      exprs.push_back(polynomial_expr(random_polynomial(m, 4, static_cast<unsigned>(rng.range(1, 4)), rng)));
                    return AssocIso(m, c.algebras[ij[0]], c.algebras[ij[1]]).verify(exprs, 10, seed);
                  }});
  defs.push_back({"derivative", random_count("derivative"),
                  [](const SuiteConfig&, std::size_t, std::uint64_t seed) {
                    Rng rng(seed);
                    const Polynomial p = random_polynomial(1, 8, static_cast<unsigned>(rng.range(1, 5)), rng);
                    return check_polynomial_derivatives(p, static_cast<unsigned>(rng.range(1, 6)), 3, seed);
                  }});
  defs.push_back({"eval_j_dimension",
                  [](const SuiteConfig& c) { return c.n_grid.size() * algebra_count(c) * (c.degree_bound + 1); },
                  [](const SuiteConfig& c, std::size_t i, std::uint64_t) {
                    const auto x = digits(i, {c.n_grid.size(), c.algebras.size(), c.degree_bound + 1});
                    return eval_j_dimension_case(DObject(c.n_grid[x[0]], c.algebras[x[1]]), static_cast<unsigned>(x[2]));
                  }});
  defs.push_back({"curry_iso",
                  [](const SuiteConfig& c) {
                    return c.n_grid.size() * c.m_grid.size() * algebra_count(c) * algebra_count(c);
                  },
                  [](const SuiteConfig& c, std::size_t i, std::uint64_t seed) {
                    const std::size_t a = c.algebras.size();
                    const auto x = digits(i, {c.n_grid.size(), c.m_grid.size(), a, a});
                    const CurryIso iso(1, DObject(c.n_grid[x[0]], c.algebras[x[2]]),
                                       DObject(c.m_grid[x[1]], c.algebras[x[3]]), c.degree_bound);
                    return iso.verify(3, seed);
                  }});
  defs.push_back({"j_product", [](const SuiteConfig& c) { return 4 * c.n_grid.size() * algebra_count(c); },
                  [](const SuiteConfig& c, std::size_t i, std::uint64_t seed) {
                    const auto r = [](std::size_t n) { return FragmentSpace::euclidean(n); };
                    const std::pair<FragmentSpace, FragmentSpace> shapes[] = {
                        {r(1), r(1)}, {r(1), r(0)}, {r(2), r(1)}, {FragmentSpace::product({r(1), r(2)}), r(1)}};
                    const auto x = digits(i, {4, c.n_grid.size(), c.algebras.size()});
                    return check_j_product_law(shapes[x[0]].first, shapes[x[0]].second,
                                               DObject(c.n_grid[x[1]], c.algebras[x[2]]), c.degree_bound, 5, seed);
                  }});
  defs.push_back({"j_prolongation",
                  [](const SuiteConfig& c) {
                    return c.n_grid.size() * c.m_grid.size() * algebra_count(c) * algebra_count(c);
                  },
                  [](const SuiteConfig& c, std::size_t i, std::uint64_t seed) {
                    const std::size_t a = c.algebras.size();
                    const auto x = digits(i, {c.n_grid.size(), c.m_grid.size(), a, a});
                    return check_j_prolongation_law(FragmentSpace::euclidean(1 + i % 2), DObject(c.n_grid[x[0]], c.algebras[x[2]]),
                                                    DObject(c.m_grid[x[1]], c.algebras[x[3]]), c.degree_bound, 3, seed);
                  }});
  defs.push_back({kProbe,
                  [](const SuiteConfig& c) { return c.n_grid.size() * algebra_count(c) + c.cases_for(kProbe); },
                  [](const SuiteConfig& c, std::size_t i, std::uint64_t seed) {
                    // Identity law on every object first, then random composable pairs.
                    const std::vector<DObject> objects = probe_objects(c);
                    const FragmentSpace x = FragmentSpace::euclidean(2);
                    SuiteReport r{kProbe, 1, {}, std::nullopt};
                    auto failure = i < objects.size() ? identity_action_failure(x, objects[i], c.degree_bound)
                                                      : composition_failure(x, objects, c.degree_bound, seed);
                    if (failure) r.fail(seed, *failure);
                    return r;
                  }});
  return defs;
}

const std::vector<SuiteDef>& registry() {
  static const std::vector<SuiteDef> defs = make_registry();
  return defs;
}

const SuiteDef& find_suite(std::string_view name) {
  for (const auto& d : registry())
    if (d.name == name) return d;
  throw ConfigError("unknown suite '" + std::string(name) + "'");
}

/// One harness case: the inner report collapses to at most one witness,
/// keyed by the seed that regenerates the whole case.
void record(SuiteReport& report, std::uint64_t case_seed, const SuiteReport& inner) {
  ++report.cases;
  if (inner.passed()) return;
  std::string detail = inner.witnesses.front().detail;
  if (inner.failures() > 1)
    detail += " (" + std::to_string(inner.failures() - 1) + " more failures in this case)";
  report.fail(case_seed, std::move(detail));
}

SuiteReport run_case(const SuiteDef& def, const SuiteConfig& config, std::size_t index, std::uint64_t case_seed) {
  try {
    return def.run(config, index, case_seed);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& err) {
    // A library error inside a case is a failure of that case, not of the run.
    SuiteReport r{def.name, 1, {}, std::nullopt};
    r.fail(case_seed, std::string("error: ") + err.what());
    return r;
  }
}

void finish(SuiteReport& report) {
  if (report.name == kProbe) report.outcome = report.passed() ? "evidence-for" : "counterexample";
}

// -- Config parsing --------------------------------------------------------------

std::uint64_t parse_u64(const json& v, const std::string& what) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (!s.empty() && std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
      try {
        return std::stoull(s);
      } catch (const std::out_of_range&) {
      }
    }
  }
  throw ConfigError(what + " must be a non-negative integer");
}

std::vector<std::size_t> parse_arity_list(const json& v, const std::string& what) {
  if (!v.is_array() || v.empty()) throw ConfigError(what + " must be a non-empty list of arities");
  std::vector<std::size_t> out;
  for (const auto& e : v) {
    const std::uint64_t n = parse_u64(e, what + " entry");
    if (n > 4) throw ConfigError(what + " entry " + std::to_string(n) + " exceeds the desk-scale limit 4");
    out.push_back(static_cast<std::size_t>(n));
  }
  return out;
}

WeilAlgebra resolve_algebra(const std::string& name, const std::filesystem::path& base_dir) {
  if (name == "reals") return WeilAlgebra::reals();
  if (is_preset(name)) return preset(name);
  std::filesystem::path path(name);
  if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
  if (!std::filesystem::exists(path))
    throw ConfigError("algebra '" + name + "' is neither a preset (" + [] {
      std::string s;
      for (const auto& p : preset_names()) s += (s.empty() ? "" : ", ") + p;
      return s;
    }() + ", reals) nor a presentation file");
  try {
    return WeilAlgebra::from_presentation(load_presentation(path.string()));
  } catch (const ParseError& err) {
    throw ConfigError("presentation file '" + path.string() + "': " + err.what());
  } catch (const ImproperIdeal& err) {
    throw ConfigError("presentation file '" + path.string() + "': " + err.what());
  }
}

}  // namespace

std::size_t SuiteConfig::cases_for(const std::string& suite) const {
  auto it = cases.find(suite);
  return it == cases.end() ? default_cases : it->second;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& d : registry()) out.push_back(d.name);
    return out;
  }();
  return names;
}

bool is_suite(std::string_view name) {
  const auto& names = suite_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

SuiteConfig default_config() {
  SuiteConfig c;
  c.suites = suite_names();
  c.cases[kProbe] = 100;
  for (const char* name : {"dual", "jet2", "jet3", "d2"}) {
    c.algebra_names.emplace_back(name);
    c.algebras.push_back(preset(name));
  }
  return c;
}

SuiteConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw ConfigError(std::string("config is not valid JSON: ") + err.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  static const std::vector<std::string> known = {"suites", "seed", "cases", "degree_bound", "dims_grid", "tolerance"};
  for (const auto& [key, _] : doc.items())
    if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError("unknown config key '" + key + "'");

  SuiteConfig c = default_config();
  if (doc.contains("suites")) {
    const auto& s = doc["suites"];
    if (!s.is_array()) throw ConfigError("suites must be a list of suite names");
    c.suites.clear();
    for (const auto& name : s) {
      if (!name.is_string() || !is_suite(name.get<std::string>()))
        throw ConfigError("unknown suite " + name.dump());
      c.suites.push_back(name.get<std::string>());
    }
  }
  if (doc.contains("seed")) c.seed = parse_u64(doc["seed"], "seed");
  if (doc.contains("cases")) {
    const auto& cs = doc["cases"];
    if (cs.is_object()) {
      for (const auto& [name, count] : cs.items()) {
        if (!is_suite(name)) throw ConfigError("cases names unknown suite '" + name + "'");
        c.cases[name] = static_cast<std::size_t>(parse_u64(count, "cases for " + name));
      }
    } else {
      c.default_cases = static_cast<std::size_t>(parse_u64(cs, "cases"));
      c.cases.clear();
    }
  }
  if (doc.contains("degree_bound")) {
    const std::uint64_t d = parse_u64(doc["degree_bound"], "degree_bound");
    if (d > 6) throw ConfigError("degree_bound " + std::to_string(d) + " exceeds the desk-scale limit 6");
    c.degree_bound = static_cast<unsigned>(d);
  }
  if (doc.contains("dims_grid")) {
    const auto& g = doc["dims_grid"];
    if (!g.is_object()) throw ConfigError("dims_grid must be an object with n, m and algebras");
    for (const auto& [key, _] : g.items())
      if (key != "n" && key != "m" && key != "algebras") throw ConfigError("unknown dims_grid key '" + key + "'");
    if (g.contains("n")) c.n_grid = parse_arity_list(g["n"], "dims_grid.n");
    if (g.contains("m")) c.m_grid = parse_arity_list(g["m"], "dims_grid.m");
    if (g.contains("algebras")) {
      const auto& list = g["algebras"];
      if (!list.is_array() || list.empty()) throw ConfigError("dims_grid.algebras must be a non-empty list");
      c.algebras.clear();
      c.algebra_names.clear();
      for (const auto& entry : list) {
        std::string name;
        if (entry.is_string())
          name = entry.get<std::string>();
        else if (entry.is_object() && entry.contains("file") && entry["file"].is_string())
          name = entry["file"].get<std::string>();
        else
          throw ConfigError("algebra entry " + entry.dump() + " must be a preset name or {\"file\": path}");
        c.algebras.push_back(resolve_algebra(name, base_dir));
        c.algebra_names.push_back(name);
      }
    }
  }
  if (doc.contains("tolerance")) {
    const auto& t = doc["tolerance"];
    if (!t.is_object()) throw ConfigError("tolerance must be an object with relative and absolute");
    for (const auto& [key, v] : t.items()) {
      if (!v.is_number() || v.get<double>() < 0) throw ConfigError("tolerance." + key + " must be a non-negative number");
      if (key == "relative")
        c.tolerance.relative = v.get<double>();
      else if (key == "absolute")
        c.tolerance.absolute = v.get<double>();
      else
        throw ConfigError("unknown tolerance key '" + key + "'");
    }
  }
  return c;
}

SuiteConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& config) {
  const SuiteDef& def = find_suite(name);
  SuiteReport report{name, 0, {}, std::nullopt};
  const std::size_t total = def.count(config);
  for (std::size_t i = 0; i < total; ++i) {
    const std::uint64_t case_seed = mix_seed(config.seed, name, i);
    record(report, case_seed, run_case(def, config, i, case_seed));
  }
  finish(report);
  return report;
}

SuiteReport replay_case(const std::string& name, const SuiteConfig& config, std::uint64_t case_seed) {
  const SuiteDef& def = find_suite(name);
  const std::size_t total = def.count(config);
  for (std::size_t i = 0; i < total; ++i) {
    if (mix_seed(config.seed, name, i) != case_seed) continue;
    SuiteReport report{name, 0, {}, std::nullopt};
    record(report, case_seed, run_case(def, config, i, case_seed));
    finish(report);
    return report;
  }
  throw ConfigError("no case of suite '" + name + "' has seed " + std::to_string(case_seed) + " under this config");
}

Report run_suites(const SuiteConfig& config) {
  Report report;
  report.version = library_version();
  report.seed = config.seed;
  for (const auto& name : config.suites) report.suites.push_back(run_suite(name, config));
  return report;
}

}  // namespace weil

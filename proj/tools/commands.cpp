#include "commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "weil/algebra.hpp"
#include "weil/errors.hpp"
#include "weil/expr.hpp"
#include "weil/harness.hpp"
#include "weil/jet.hpp"
#include "weil/prolong.hpp"
#include "weil/rational.hpp"
#include "weil/report.hpp"

namespace weil::cli {
namespace {

namespace fs = std::filesystem;

// derive is capped here: beyond order 12 the factorials swamp a double.
constexpr unsigned kMaxDeriveOrder = 12;

WeilAlgebra load_algebra(const std::string& name) {
  if (is_preset(name)) return preset(name);
  if (name == "reals") return WeilAlgebra::reals();
  if (!fs::exists(name)) throw ConfigError("no preset or file named '" + name + "'");
  return WeilAlgebra::from_presentation(load_presentation(name));
}

std::vector<Rational> parse_point(const std::string& text) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    out.push_back(parse_rational(text.substr(start, comma == std::string::npos ? comma : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

// The base point a plus the generators: a_i + x_i while a generator is
// left, the bare constant a_i after that.
template <class S>
std::vector<Element<S>> displaced_point(const WeilAlgebra& w, const std::vector<Rational>& at) {
  std::vector<Element<S>> pt;
  for (std::size_t i = 0; i < at.size(); ++i) {
    S a = scalar_traits<S>::from_rational(S(0), at[i]);
    auto e = Element<S>::constant(w, a);
    if (i < w.nvars()) e = e + Element<S>::variable(w, i);
    pt.push_back(std::move(e));
  }
  return pt;
}

template <class S>
std::vector<Element<S>> lift_at(const SmoothMap& f, const WeilAlgebra& w, const std::vector<Rational>& at) {
  auto pt = displaced_point<S>(w, at);
  return taylor_lift<S>(f, w, std::span<const Element<S>>(pt), S(0));
}

int cmd_check(const std::string& path, std::ostream& out) {
  if (!fs::exists(path)) throw ConfigError("cannot open '" + path + "'");
  auto w = WeilAlgebra::from_presentation(load_presentation(path));
  out << w.summary() << ", nilpotency order " << w.nilpotency_order() << "\n";
  return kPass;
}

int cmd_lift(const std::string& algebra, const std::string& expr, const std::string& at_text,
             std::ostream& out) {
  auto w = load_algebra(algebra);
  auto at = parse_point(at_text);
  auto f = parse_smooth_map(expr, at.size());
  try {
    for (const auto& e : lift_at<Rational>(f, w, at)) out << to_string(e) << "\n";
  } catch (const ScalarModeError&) {
    for (const auto& e : lift_at<double>(f, w, at)) out << to_string(e) << "\n";
  }
  return kPass;
}

template <class S>
void print_derivatives(const Element<S>& lifted, unsigned order, std::ostream& out) {
  S factorial = scalar_traits<S>::from_rational(S(0), Rational(1));
  for (unsigned j = 0; j <= order; ++j) {
    if (j > 0) factorial = factorial * S(j);
    S value = lifted[j] * factorial;
    out << "f^(" << j << ") = " << scalar_traits<S>::to_string(value) << "\n";
  }
}

int cmd_derive(unsigned order, const std::string& expr, const std::string& at_text, std::ostream& out) {
  if (order > kMaxDeriveOrder)
    throw ConfigError("order " + std::to_string(order) + " exceeds the limit of " + std::to_string(kMaxDeriveOrder));
  auto w = jet_algebra(order);
  std::vector<Rational> at{parse_rational(at_text)};
  auto f = parse_smooth_map(expr, 1);
  if (f.coarity() != 1) throw ConfigError("derive takes a single expression");
  try {
    print_derivatives(lift_at<Rational>(f, w, at).front(), order, out);
  } catch (const ScalarModeError&) {
    print_derivatives(lift_at<double>(f, w, at).front(), order, out);
  }
  return kPass;
}

int cmd_equiv(const std::string& algebra, const std::string& f_text, const std::string& g_text,
              std::ostream& out) {
  auto w = load_algebra(algebra);
  auto f = parse_smooth_map(f_text, w.nvars());
  auto g = parse_smooth_map(g_text, w.nvars());
  auto eq = equiv_mod(f, g, w);
  if (eq.equivalent) {
    out << "equivalent" << (eq.exact ? "" : " (real mode)") << "\n";
    return kPass;
  }
  out << "not equivalent: component " << *eq.component << " differs by " << eq.difference
      << (eq.base_point_differs ? " (different base points)" : "") << "\n";
  return kFailure;
}

struct ReplayTarget {
  std::string suite;
  std::uint64_t case_seed = 0;
};

ReplayTarget parse_replay(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("--replay expects suite:seed, got '" + text + "'");
  ReplayTarget t{text.substr(0, colon), 0};
  if (!is_suite(t.suite)) throw ConfigError("unknown suite '" + t.suite + "'");
  try {
    std::size_t used = 0;
    t.case_seed = std::stoull(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1) throw std::invalid_argument("trailing text");
  } catch (const std::logic_error&) {
    throw ConfigError("bad case seed in '" + text + "'");
  }
  return t;
}

int cmd_verify(const std::string& config_path, const std::string& out_path, std::optional<std::uint64_t> seed,
               const std::optional<std::string>& replay, bool timing, std::ostream& out) {
  SuiteConfig config = load_config(config_path);
  if (seed) config.seed = *seed;

  auto start = std::chrono::steady_clock::now();
  Report report;
  if (replay) {
    auto target = parse_replay(*replay);
    report.version = library_version();
    report.seed = config.seed;
    report.suites.push_back(replay_case(target.suite, config, target.case_seed));
  } else {
    report = run_suites(config);
  }
  // Timing is opt-in so that identical runs write identical bytes.
  if (timing)
    report.wall_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count());

  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw ConfigError("cannot write '" + out_path + "'");
  file << to_json(report);
  file.close();
  if (!file) throw ConfigError("failed writing '" + out_path + "'");

  for (const auto& s : report.suites) {
    out << s.name << ": " << s.cases << " cases, " << s.failures() << " failures";
    if (s.outcome) out << " (" << *s.outcome << ")";
    out << "\n";
  }
  return report.failures() == 0 ? kPass : kFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weil algebras, jet lifts and property suites", "weil"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", library_version());

  std::string path;
  auto* check = app.add_subcommand("check", "validate a presentation file and print its quotient basis");
  check->add_option("file", path, "presentation JSON")->required();

  std::string algebra, expr, at, f_text, g_text;
  auto* lift = app.add_subcommand("lift", "lift an expression through a Weil algebra at a base point");
  lift->add_option("--algebra", algebra, "preset name or presentation file")->required();
  lift->add_option("--expr", expr, "expression or comma-separated tuple")->required();
  lift->add_option("--at", at, "comma-separated rationals")->required();

  unsigned order = 0;
  auto* derive = app.add_subcommand("derive", "print f, f', ..., f^(k) at a point");
  derive->add_option("--order", order, "highest derivative")->required();
  derive->add_option("--expr", expr, "expression in t")->required();
  derive->add_option("--at", at, "rational base point")->required();

  auto* equiv = app.add_subcommand("equiv", "decide f = g mod the algebra's ideal");
  equiv->add_option("--algebra", algebra, "preset name or presentation file")->required();
  equiv->add_option("--f", f_text, "first map")->required();
  equiv->add_option("--g", g_text, "second map")->required();

  std::string config_path, out_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> replay;
  bool timing = false;
  auto* verify = app.add_subcommand("verify", "run property suites and write a JSON report");
  verify->add_option("--config", config_path, "suite config JSON")->required();
  verify->add_option("--out", out_path, "report path")->required();
  verify->add_option("--seed", seed, "override the config seed");
  verify->add_option("--replay", replay, "rerun one case, given as suite:seed");
  verify->add_flag("--timing", timing, "record wall-clock time in the report");

  std::vector<std::string> rest(args.rbegin(), args.rend());
  if (!rest.empty()) rest.pop_back();  // program name
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*check) return cmd_check(path, out);
    if (*lift) return cmd_lift(algebra, expr, at, out);
    if (*derive) return cmd_derive(order, expr, at, out);
    if (*equiv) return cmd_equiv(algebra, f_text, g_text, out);
    return cmd_verify(config_path, out_path, seed, replay, timing, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ImproperIdeal& e) {
    err << "improper ideal: " << e.what() << "\n";
    return kSemantic;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kSemantic;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kSemantic;
  }
}

}  // namespace weil::cli

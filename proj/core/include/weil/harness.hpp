#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "weil/algebra.hpp"
#include "weil/report.hpp"
#include "weil/scalar.hpp"

namespace weil {

/// A run of property suites.
///
/// JSON form:
///
///     {"suites": ["ring_laws", "c_functoriality"], "seed": 7,
///      "cases": 40 | {"ring_laws": 12},
///      "degree_bound": 2,
///      "dims_grid": {"n": [0, 1, 2], "m": [0, 1],
///                    "algebras": ["dual", "d2", {"file": "cusp.json"}]},
///      "tolerance": {"relative": 1e-9, "absolute": 1e-12}}
///
/// Every key is optional. Algebra entries are preset names, `reals`, or
/// presentation files resolved against the config's directory.
struct SuiteConfig {
  std::vector<std::string> suites;
  std::uint64_t seed = 0;
  std::size_t default_cases = 50;
  std::map<std::string, std::size_t> cases;
  unsigned degree_bound = 2;
  std::vector<std::size_t> n_grid = {0, 1, 2};
  std::vector<std::size_t> m_grid = {0, 1, 2};
  std::vector<std::string> algebra_names;
  std::vector<WeilAlgebra> algebras;
  Tolerance tolerance;

  std::size_t cases_for(const std::string& suite) const;
};

/// The default run: every suite, seed 0, the four presets.
SuiteConfig default_config();

/// Throws ConfigError on malformed input or unknown suites and algebras.
SuiteConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir = {});
SuiteConfig load_config(const std::filesystem::path& path);

/// Every suite name in run order.
const std::vector<std::string>& suite_names();
bool is_suite(std::string_view name);

/// Runs one suite. Every case is regenerated from its own seed, so a
/// witness reruns alone through replay_case.
SuiteReport run_suite(const std::string& name, const SuiteConfig& config);

/// Reruns the single case of `name` whose seed is `case_seed`. Throws
/// ConfigError when no case of the configured run has that seed.
SuiteReport replay_case(const std::string& name, const SuiteConfig& config, std::uint64_t case_seed);

/// Runs the configured suites in order. wall_ms is left at 0.
Report run_suites(const SuiteConfig& config);

}  // namespace weil

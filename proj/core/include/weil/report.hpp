#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace weil {

/// A failing case: the seed that regenerates it and what went wrong.
struct Witness {
  std::uint64_t case_seed = 0;
  std::string detail;
};

/// Outcome of one property suite. Every failure carries exactly one witness.
struct SuiteReport {
  std::string name;
  std::size_t cases = 0;
  std::vector<Witness> witnesses;
  /// Set only for probes of statements not known to hold: "evidence-for" or
  /// "counterexample".
  std::optional<std::string> outcome;

  std::size_t failures() const noexcept { return witnesses.size(); }
  bool passed() const noexcept { return witnesses.empty(); }

  void fail(std::uint64_t case_seed, std::string detail) { witnesses.push_back({case_seed, std::move(detail)}); }
  /// Appends another report's cases and witnesses.
  void absorb(const SuiteReport& other) {
    cases += other.cases;
    witnesses.insert(witnesses.end(), other.witnesses.begin(), other.witnesses.end());
  }
};

struct Report {
  std::string version;
  std::uint64_t seed = 0;
  std::vector<SuiteReport> suites;
  std::uint64_t wall_ms = 0;

  std::size_t failures() const noexcept {
    std::size_t n = 0;
    for (const auto& s : suites) n += s.failures();
    return n;
  }
};

/// Version of the library, recorded in every report.
std::string library_version();

/// Stable JSON text: two-space indentation, fixed key order, trailing newline.
std::string to_json(const Report& report);

}  // namespace weil

#include "weil/report.hpp"

#include <json.hpp>

namespace weil {

std::string library_version() { return WEIL_VERSION; }

std::string to_json(const Report& report) {
  using json = nlohmann::ordered_json;
  json suites = json::array();
  for (const auto& s : report.suites) {
    json witnesses = json::array();
    for (const auto& w : s.witnesses) witnesses.push_back(json{{"case_seed", w.case_seed}, {"detail", w.detail}});
    json entry{{"name", s.name}, {"cases", s.cases}, {"failures", s.failures()}};
    if (s.outcome) entry["outcome"] = *s.outcome;
    entry["witnesses"] = std::move(witnesses);
    suites.push_back(std::move(entry));
  }
  json doc{{"version", report.version}, {"seed", report.seed}, {"suites", std::move(suites)}, {"wall_ms", report.wall_ms}};
  return doc.dump(2) + "\n";
}

}  // namespace weil

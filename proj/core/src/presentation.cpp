#include <fstream>
#include <sstream>

#include <json.hpp>

#include "weil/algebra.hpp"
#include "weil/errors.hpp"

namespace weil {

using nlohmann::json;

WeilPresentation parse_presentation(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed presentation: ") + e.what(), e.byte);
  }
  if (!doc.is_object()) throw ParseError("presentation must be a JSON object", 0);

  WeilPresentation pres;
  try {
    for (const auto& v : doc.at("variables")) pres.variables.push_back(v.get<std::string>());
    if (doc.contains("relations"))
      for (const auto& r : doc.at("relations")) pres.relations.push_back(r.get<std::string>());
    const auto& k = doc.at("nilpotency");
    if (!k.is_number_unsigned() || k.get<std::uint64_t>() == 0 || k.get<std::uint64_t>() > 64)
      throw ParseError("nilpotency must be an integer in [1, 64]", 0);
    pres.nilpotency = k.get<unsigned>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid presentation field: ") + e.what(), 0);
  }
  return pres;
}

WeilPresentation load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open presentation file '" + path + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_presentation(buf.str());
}

std::string to_json(const WeilPresentation& pres) {
  json doc;
  doc["variables"] = pres.variables;
  doc["relations"] = pres.relations;
  doc["nilpotency"] = pres.nilpotency;
  return doc.dump(2);
}

}  // namespace weil

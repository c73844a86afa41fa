#ifndef ROG_REPORT_HPP
#define ROG_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rog/catops.hpp"
#include "rog/splitext.hpp"

namespace rog {

using Json = nlohmann::ordered_json;

// One named Tri verdict for the report; Unknown carries its bound, No its
// witness when one exists.
struct VerdictEntry {
  std::string name;
  Tri tri;
  std::optional<std::string> witness;
};

// Deterministic command report: identical inputs and flags produce
// byte-identical structured output.
struct Report {
  std::string command;
  Json inputs = Json::object();
  std::vector<VerdictEntry> verdicts;
  Json objects = Json::object();
  std::vector<std::string> notes;

  void verdict(const std::string& name, const Tri& t,
               std::optional<std::string> witness = std::nullopt);
  // exit code 1 when any verdict is No (used by `check` and the bundles)
  bool any_no() const;

  Json to_json() const;
  std::string to_text() const;
};

Json group_json(const RPGroup& g);
Json morphism_json(const Morphism& f);
Json analysis_json(const SemidirectGroup& s, const SplitExtAnalysis& a);
Json class_json(const Morphism& f, const MorphClass& c);

std::string tri_text(const Tri& t);

}  // namespace rog

#endif

#include <json.hpp>

#include "expcut/cutelim.hpp"
#include "expcut/syntax.hpp"

namespace expcut {

std::string traceToJson(const ReductionTrace& trace) {
  using nlohmann::json;
  json steps = json::array();
  for (const auto& s : trace.steps) {
    json terms = json::array();
    for (const auto& t : s.terms) terms.push_back(printTerm(t));
    json step = {
        {"kind", stepKindName(s.kind)},
        {"classFormula", s.classFormula},
        {"terms", terms},
        {"eigenvariables", s.eigenvariables},
        {"renamed", s.renamed},
        {"before", s.before},
        {"after", s.after},
    };
    if (s.cutIndex) step["cutIndex"] = *s.cutIndex;
    steps.push_back(std::move(step));
  }
  json measures = json::array();
  for (const auto& m : trace.measures) measures.push_back({m.r, m.k});
  json doc = {
      {"steps", steps},
      {"finalProof", canonicalPrint(trace.finalProof)},
      {"measures", measures},
  };
  return doc.dump(2) + "\n";
}

}  // namespace expcut

#include "expcut/check.hpp"

#include <map>

#include "expcut/dependency.hpp"
#include "expcut/errors.hpp"
#include "expcut/syntax.hpp"

namespace expcut {

namespace {

struct ForallOccurrence {
  std::string prefixKey;
  std::string formulaKey;
  bool inCut = false;
  std::string printed;  // branch up to and including A[x:=alpha]
};

struct RegularityWalker {
  std::map<std::string, ForallOccurrence> first;
  WeakRegularityReport& report;
  bool inCut = false;
  std::vector<std::string> keys;
  std::vector<std::string> shown;

  void push(const Formula& f) {
    keys.push_back(formulaKey(f));
    shown.push_back(printFormula(f));
  }
  void push(int marker) {
    keys.push_back(std::to_string(marker));
    shown.push_back(std::to_string(marker));
  }
  void pop() {
    keys.pop_back();
    shown.pop_back();
  }

  static std::string join(const std::vector<std::string>& v, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += sep;
      out += v[i];
    }
    return out;
  }

  void walk(const ExpansionTree& e) {
    switch (e.kind()) {
      case TreeKind::Leaf:
        return;
      case TreeKind::And:
      case TreeKind::Or:
        for (int i = 1; i <= 2; ++i) {
          push(e.shallow());
          push(i);
          walk(i == 1 ? e.left() : e.right());
          pop();
          pop();
        }
        return;
      case TreeKind::Exists:
        push(e.shallow());
        for (const auto& inst : e.instances()) walk(inst.child);
        pop();
        return;
      case TreeKind::Forall: {
        ForallOccurrence occ;
        occ.prefixKey = join(keys, "\x1f");
        occ.formulaKey = formulaKey(e.shallow());
        occ.inCut = inCut;
        push(e.shallow());
        push(e.child().shallow());
        occ.printed = std::string(inCut ? "cut " : "tree ") + "[" + join(shown, ", ") + ", ...]";
        pop();
        auto [it, fresh] = first.emplace(e.eigenvariable(), occ);
        if (!fresh) {
          const auto& o = it->second;
          std::string why;
          if (o.prefixKey != occ.prefixKey) why = "different prefixes";
          else if (o.formulaKey != occ.formulaKey) why = "different quantified formulas";
          else if (o.inCut != occ.inCut) why = "one in a tree, one in a cut";
          if (!why.empty()) {
            report.ok = false;
            report.violations.emplace_back(o.printed, occ.printed);
            report.messages.push_back("eigenvariable " + e.eigenvariable() + " (" + why + "): " +
                                      o.printed + " vs " + occ.printed);
          }
        }
        walk(e.child());
        pop();
        return;
      }
    }
  }
};

}  // namespace

WeakRegularityReport checkWeakRegularity(const ExpansionProof& p) {
  WeakRegularityReport report;
  RegularityWalker w{{}, report, false, {}, {}};
  w.inCut = true;
  for (const auto& c : p.cuts) {
    w.walk(c.positive);
    w.walk(c.negative);
  }
  w.inCut = false;
  for (const auto& t : p.trees) w.walk(t);
  return report;
}

AcyclicityReport checkAcyclicity(const ExpansionProof& p) {
  AcyclicityReport report;
  DependencyGraph g(p);
  if (auto cycle = g.findCycle()) {
    report.ok = false;
    std::string line;
    for (auto n : *cycle) {
      report.cycle.push_back(g.label(n));
      line += g.label(n) + " @" + printPath(g.node(n).path) + " < ";
    }
    line += g.label(cycle->front());
    report.messages.push_back("cycle: " + line);
  }
  return report;
}

ValidityReport checkValidity(const ExpansionProof& p, const CheckOptions& options) {
  ValidityReport report;
  auto dp = deepSequent(p);
  try {
    auto r = isTautology(dp, TautologyOptions{options.atomLimit});
    if (!r.valid) {
      report.ok = false;
      report.countermodel = r.countermodel;
      report.messages.push_back("countermodel: " + printValuation(*r.countermodel));
    }
  } catch (const ResourceLimit& e) {
    report.ok = false;
    report.messages.push_back(std::string("resource limit: ") + e.what());
  }
  return report;
}

ConditionReport checkEigenvariableCondition(const ExpansionProof& p) {
  ConditionReport report;
  std::set<std::string> free;
  for (const auto& t : p.trees) {
    auto fv = freeVariables(t.shallow());
    free.insert(fv.begin(), fv.end());
  }
  for (const auto& a : eigenvariables(p)) {
    if (free.count(a)) {
      report.ok = false;
      report.messages.push_back("eigenvariable " + a + " occurs in the end-sequent");
    }
  }
  return report;
}

ProofReport checkProof(const ExpansionProof& p, const CheckOptions& options) {
  ProofReport r;
  r.weakRegularity = checkWeakRegularity(p);
  r.acyclicity = checkAcyclicity(p);
  r.validity = checkValidity(p, options);
  r.eigenvariables = checkEigenvariableCondition(p);
  return r;
}

std::string ProofReport::format() const {
  std::string out;
  auto line = [&](const char* name, const ConditionReport& c) {
    out += std::string(name) + (c.ok ? ": ok\n" : ": FAILED\n");
    for (const auto& m : c.messages) out += "  " + m + "\n";
  };
  line("weak regularity", weakRegularity);
  line("acyclicity", acyclicity);
  line("validity", validity);
  line("eigenvariable condition", eigenvariables);
  return out;
}

}  // namespace expcut

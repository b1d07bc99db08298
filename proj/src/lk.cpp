#include "expcut/lk.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "expcut/errors.hpp"
#include "expcut/syntax.hpp"

namespace expcut {

namespace {

std::vector<std::string> keysOf(const std::vector<Formula>& s) {
  std::vector<std::string> out;
  out.reserve(s.size());
  for (const auto& f : s) out.push_back(formulaKey(f));
  return out;
}

struct PremiseFit {
  std::vector<int> contextOf;
  std::vector<std::size_t> active;
};

// Does `premise` consist of the conclusion (minus `exclude`) plus `actives`?
std::optional<PremiseFit> fit(const std::vector<std::string>& premise, const std::vector<std::string>& concl,
                              int exclude, const std::vector<std::string>& actives, SequentSemantics sem) {
  PremiseFit out;
  out.contextOf.assign(premise.size(), -1);
  if (sem == SequentSemantics::Multiset) {
    if (premise.size() + (exclude >= 0 ? 1 : 0) != concl.size() + actives.size()) return std::nullopt;
    std::vector<bool> used(premise.size(), false);
    // actives are conventionally last; take matches from the back
    for (const auto& a : actives) {
      std::size_t k = premise.size();
      for (std::size_t i = premise.size(); i-- > 0;) {
        if (!used[i] && premise[i] == a) {
          k = i;
          break;
        }
      }
      if (k == premise.size()) return std::nullopt;
      used[k] = true;
      out.active.push_back(k);
    }
    std::vector<bool> taken(concl.size(), false);
    for (std::size_t i = 0; i < premise.size(); ++i) {
      if (used[i]) continue;
      bool found = false;
      for (std::size_t j = 0; j < concl.size(); ++j) {
        if (!taken[j] && static_cast<int>(j) != exclude && concl[j] == premise[i]) {
          taken[j] = true;
          out.contextOf[i] = static_cast<int>(j);
          found = true;
          break;
        }
      }
      if (!found) return std::nullopt;
    }
    return out;
  }
  std::set<std::string> prem(premise.begin(), premise.end());
  std::set<std::string> all(concl.begin(), concl.end());
  std::set<std::string> act(actives.begin(), actives.end());
  std::set<std::string> withP = all;
  withP.insert(act.begin(), act.end());
  std::set<std::string> withoutP = all;
  if (exclude >= 0) withoutP.erase(concl[static_cast<std::size_t>(exclude)]);
  withoutP.insert(act.begin(), act.end());
  if (prem != withP && prem != withoutP) return std::nullopt;
  for (const auto& a : actives) {
    auto it = std::find(premise.begin(), premise.end(), a);
    out.active.push_back(static_cast<std::size_t>(it - premise.begin()));
  }
  for (std::size_t i = 0; i < premise.size(); ++i) {
    for (std::size_t j = 0; j < concl.size(); ++j) {
      if (concl[j] == premise[i]) {
        out.contextOf[i] = static_cast<int>(j);
        break;
      }
    }
  }
  return out;
}

void setWhy(std::string* why, std::string s) {
  if (why) *why = std::move(s);
}

}  // namespace

std::optional<InferenceMatch> matchInference(const LKProof& node, SequentSemantics sem, std::string* why) {
  static const std::size_t arity[] = {0, 1, 1, 2, 1, 2};
  std::size_t want = arity[static_cast<int>(node.rule)];
  if (node.premises.size() != want) {
    setWhy(why, "expected " + std::to_string(want) + " premises, found " + std::to_string(node.premises.size()));
    return std::nullopt;
  }
  InferenceMatch m;
  if (node.rule == LKRule::Init) return m;

  auto concl = keysOf(node.conclusion);
  std::vector<std::vector<std::string>> prem;
  for (const auto& p : node.premises) prem.push_back(keysOf(p.conclusion));

  auto attempt = [&](int principal, int exclude,
                     const std::vector<std::vector<Formula>>& actives) -> bool {
    InferenceMatch cand;
    cand.principal = principal;
    for (std::size_t i = 0; i < prem.size(); ++i) {
      auto f = fit(prem[i], concl, exclude, keysOf(actives[i]), sem);
      if (!f) return false;
      cand.contextOf.push_back(std::move(f->contextOf));
      cand.active.push_back(std::move(f->active));
    }
    m = std::move(cand);
    return true;
  };

  if (node.rule == LKRule::Cut) {
    if (!node.formula) {
      setWhy(why, "cut without a cut formula");
      return std::nullopt;
    }
    if (attempt(-1, -1, {{*node.formula}, {dual(*node.formula)}})) return m;
    setWhy(why, "premises are not the conclusion plus " + printFormula(*node.formula) + " / its dual");
    return std::nullopt;
  }

  std::string lastError = "no principal formula fits the premises";
  for (std::size_t p = 0; p < node.conclusion.size(); ++p) {
    const Formula& f = node.conclusion[p];
    int pi = static_cast<int>(p);
    switch (node.rule) {
      case LKRule::Or:
        if (f.kind() == FormulaKind::Or && attempt(pi, pi, {{f.left(), f.right()}})) return m;
        break;
      case LKRule::And:
        if (f.kind() == FormulaKind::And && attempt(pi, pi, {{f.left()}, {f.right()}})) return m;
        break;
      case LKRule::Forall:
        if (f.kind() == FormulaKind::Forall) {
          try {
            Formula inst = substitute(f.body(), Substitution{{f.binder(), Term::symbol(node.eigenvariable)}});
            if (attempt(pi, pi, {{inst}})) return m;
          } catch (const CaptureError& e) {
            lastError = e.what();
          }
        }
        break;
      case LKRule::Exists:
        if (f.kind() == FormulaKind::Exists && node.witness) {
          try {
            Formula inst = substitute(f.body(), Substitution{{f.binder(), *node.witness}});
            if (attempt(pi, -1, {{inst}})) return m;
          } catch (const CaptureError& e) {
            lastError = std::string("witness captured: ") + e.what();
          }
        }
        break;
      default:
        break;
    }
  }
  setWhy(why, lastError);
  return std::nullopt;
}

LKReport checkLK(const LKProof& pi, bool requireRegular, SequentSemantics sem) {
  LKReport report;
  std::map<std::string, std::size_t> eigen;
  std::vector<std::pair<const LKProof*, std::string>> stack{{&pi, "root"}};
  while (!stack.empty()) {
    auto [node, where] = stack.back();
    stack.pop_back();
    auto bad = [&](const std::string& msg) { report.violations.push_back(where + ": " + msg); };
    std::string why;
    if (!matchInference(*node, sem, &why)) bad(why);
    switch (node->rule) {
      case LKRule::Init: {
        auto keys = keysOf(node->conclusion);
        auto has = [&](const Formula& f) {
          return std::find(keys.begin(), keys.end(), formulaKey(f)) != keys.end();
        };
        if (!node->formula || node->formula->kind() != FormulaKind::PosAtom) {
          bad("initial sequent without a distinguished atom");
        } else {
          const Formula& a = *node->formula;
          bool isTrue = a.arguments().empty() && a.predicate() == kTrueAtom;
          bool isFalse = a.arguments().empty() && a.predicate() == kFalseAtom;
          if (isTrue ? !has(a) : isFalse ? !has(dual(a)) : !(has(a) && has(dual(a)))) {
            bad("initial sequent does not contain " + printFormula(a) + " and its dual");
          }
        }
        break;
      }
      case LKRule::Forall: {
        if (node->eigenvariable.empty()) bad("missing eigenvariable");
        for (const auto& f : node->conclusion) {
          if (occursFree(node->eigenvariable, f)) {
            bad("eigenvariable " + node->eigenvariable + " occurs in the conclusion");
            break;
          }
        }
        if (requireRegular && ++eigen[node->eigenvariable] == 2) {
          bad("eigenvariable " + node->eigenvariable + " used by two inferences");
        }
        break;
      }
      case LKRule::Exists:
        if (!node->witness) bad("missing witness term");
        break;
      default:
        break;
    }
    for (std::size_t i = 0; i < node->premises.size(); ++i) {
      stack.emplace_back(&node->premises[i], where + "." + std::to_string(i));
    }
  }
  if (requireRegular) {
    std::set<std::string> free;
    for (const auto& f : pi.conclusion) {
      auto fv = freeVariables(f);
      free.insert(fv.begin(), fv.end());
    }
    for (const auto& [a, n] : eigen) {
      if (free.count(a)) report.violations.push_back("eigenvariable " + a + " is free in the end-sequent");
    }
  }
  return report;
}

std::size_t cutCount(const LKProof& pi) {
  std::size_t n = pi.rule == LKRule::Cut ? 1 : 0;
  for (const auto& p : pi.premises) n += cutCount(p);
  return n;
}

std::size_t inferenceCount(const LKProof& pi) {
  std::size_t n = 1;
  for (const auto& p : pi.premises) n += inferenceCount(p);
  return n;
}

std::size_t depth(const LKProof& pi) {
  std::size_t d = 0;
  for (const auto& p : pi.premises) d = std::max(d, depth(p));
  return d + 1;
}

}  // namespace expcut

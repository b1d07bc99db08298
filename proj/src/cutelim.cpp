#include "expcut/cutelim.hpp"

#include <algorithm>
#include <set>

#include "expcut/dependency.hpp"
#include "expcut/errors.hpp"
#include "expcut/syntax.hpp"

namespace expcut {

std::size_t rank(const Cut& c) { return complexity(c.cutFormula()); }

const char* stepKindName(StepKind k) {
  switch (k) {
    case StepKind::Quantifier: return "quantifier";
    case StepKind::Propositional: return "propositional";
    case StepKind::Atomic: return "atomic";
  }
  return "?";
}

std::vector<CutClass> cutClasses(const ExpansionProof& p) {
  std::map<std::string, std::size_t> byKey;
  std::vector<CutClass> out;
  for (std::size_t i = 0; i < p.cuts.size(); ++i) {
    std::string key = formulaKey(p.cuts[i].cutFormula());
    auto [it, fresh] = byKey.emplace(key, out.size());
    if (fresh) out.push_back(CutClass{p.cuts[i].cutFormula(), {}, rank(p.cuts[i])});
    out[it->second].members.push_back(i);
  }
  std::stable_sort(out.begin(), out.end(), [](const CutClass& a, const CutClass& b) {
    return printFormula(a.classFormula) < printFormula(b.classFormula);
  });
  return out;
}

Measure measure(const ExpansionProof& p) {
  Measure m;
  for (const auto& c : cutClasses(p)) {
    if (c.rank > m.r) {
      m.r = c.rank;
      m.k = 0;
    }
    if (c.rank == m.r) ++m.k;
  }
  return m;
}

namespace {

// Indices of the classes that qualify as maximal, in class order.
std::vector<std::size_t> maximalClasses(const ExpansionProof& p, const std::vector<CutClass>& classes) {
  std::size_t r = 0;
  for (const auto& c : classes) r = std::max(r, c.rank);
  DependencyGraph g(p);
  std::vector<std::size_t> targets;
  for (const auto& c : classes) {
    if (c.rank == r) {
      for (auto m : c.members) targets.push_back(*g.cutNode(m));
    }
  }
  auto below = g.reaching(targets);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].rank != r) continue;
    bool any = false;
    for (auto m : classes[i].members) any = any || below[*g.cutNode(m)];
    if (!any) out.push_back(i);
  }
  return out;
}

// members are listed in index order
bool isMember(const CutClass& c, std::size_t i) {
  return std::binary_search(c.members.begin(), c.members.end(), i);
}

ExpansionProof context(const ExpansionProof& p, const CutClass& c) {
  ExpansionProof out;
  for (std::size_t i = 0; i < p.cuts.size(); ++i) {
    if (!isMember(c, i)) out.cuts.push_back(p.cuts[i]);
  }
  out.trees = p.trees;
  return out;
}

void append(ExpansionProof& into, const ExpansionProof& from) {
  into.cuts.insert(into.cuts.end(), from.cuts.begin(), from.cuts.end());
  into.trees.insert(into.trees.end(), from.trees.begin(), from.trees.end());
}

}  // namespace

CutClass findMaximalClass(const ExpansionProof& p) {
  auto classes = cutClasses(p);
  if (classes.empty()) throw NoMaximalClass("proof has no cuts");
  auto max = maximalClasses(p, classes);
  if (max.empty()) throw NoMaximalClass("every class of maximal rank lies below another cut of that rank");
  return classes[max.front()];
}

ReductionContext::ReductionContext(const ExpansionProof& p) { names_.reserve(collectNames(p)); }

ExpansionProof reduceQuantifier(const ExpansionProof& p, const CutClass& c, ReductionContext& ctx,
                                ReductionStep* record) {
  std::vector<std::string> alphas;
  std::vector<ExpansionTree> fs;
  std::vector<Instance> pairs;
  for (auto m : c.members) {
    const Cut& cut = p.cuts[m];
    if (cut.positive.kind() != TreeKind::Exists || cut.negative.kind() != TreeKind::Forall) {
      throw PreconditionViolated("cut " + std::to_string(m) + " is not an existential/universal pair: " +
                                 printCut(cut));
    }
    alphas.push_back(cut.negative.eigenvariable());
    fs.push_back(cut.negative.child());
    pairs.insert(pairs.end(), cut.positive.instances().begin(), cut.positive.instances().end());
  }
  ExpansionProof rest = context(p, c);
  std::set<std::string> alphaSet(alphas.begin(), alphas.end());
  {
    std::set<std::string> inContext;
    for (const auto& cut : rest.cuts) {
      collectEigenvariables(cut.positive, inContext);
      collectEigenvariables(cut.negative, inContext);
    }
    for (const auto& t : rest.trees) collectEigenvariables(t, inContext);
    for (const auto& a : alphaSet) {
      if (inContext.count(a)) {
        throw PreconditionViolated("eigenvariable " + a + " of the reduced class also expands a universal in the context");
      }
    }
  }

  // R: eigenvariables in the context or below some F_h that depend on an alpha_i
  std::set<std::string> renamed;
  {
    DependencyGraph g(p);
    std::vector<std::size_t> sources;
    for (std::size_t n = 0; n < g.size(); ++n) {
      const DepNode& d = g.node(n);
      if (d.kind == DepNode::Kind::Forall && d.inCut && isMember(c, d.cutIndex) && d.path.side == 1 &&
          d.path.steps.size() == 1) {
        sources.push_back(n);
      }
    }
    auto reach = g.reachableFrom(sources);
    for (std::size_t n = 0; n < g.size(); ++n) {
      const DepNode& d = g.node(n);
      if (!reach[n] || d.kind != DepNode::Kind::Forall) continue;
      bool inMember = d.inCut && isMember(c, d.cutIndex);
      bool underF = inMember && d.path.side == 1 && d.path.steps.size() > 1;
      if (!inMember || underF) renamed.insert(d.eigenvariable);
    }
  }

  ExpansionProof out;
  std::vector<ExpansionProof> copies;
  for (const auto& [t, e] : pairs) {
    Substitution eta;
    for (const auto& b : renamed) eta.emplace(b, Term::symbol(ctx.names().fresh(b)));
    Substitution sigma;
    for (const auto& a : alphaSet) sigma.emplace(a, t);
    for (const auto& f : fs) out.cuts.push_back(Cut::make(e, applySubstitution(applySubstitution(f, eta), sigma)));
    copies.push_back(applySubstitution(applySubstitution(rest, eta), sigma));
  }
  append(out, rest);
  for (const auto& cp : copies) append(out, cp);

  if (record) {
    record->kind = StepKind::Quantifier;
    record->classFormula = printFormula(c.classFormula);
    for (const auto& inst : pairs) record->terms.push_back(inst.term);
    record->eigenvariables = alphas;
    record->renamed.assign(renamed.begin(), renamed.end());
  }
  return out;
}

ExpansionProof reducePropositional(const ExpansionProof& p, const CutClass& c, ReductionStep* record) {
  ExpansionProof out;
  out.trees = p.trees;
  for (std::size_t i = 0; i < p.cuts.size(); ++i) {
    const Cut& cut = p.cuts[i];
    if (!isMember(c, i)) {
      out.cuts.push_back(cut);
      continue;
    }
    if (cut.positive.kind() != TreeKind::Or || cut.negative.kind() != TreeKind::And) {
      throw PreconditionViolated("cut " + std::to_string(i) + " is not a disjunction/conjunction pair: " +
                                 printCut(cut));
    }
    out.cuts.push_back(Cut::make(cut.positive.left(), cut.negative.left()));
    out.cuts.push_back(Cut::make(cut.positive.right(), cut.negative.right()));
  }
  if (record) {
    record->kind = StepKind::Propositional;
    record->classFormula = printFormula(c.classFormula);
  }
  return out;
}

ExpansionProof reduceAtomic(const ExpansionProof& p, std::size_t cutIndex, ReductionStep* record) {
  if (cutIndex >= p.cuts.size()) throw PreconditionViolated("no cut " + std::to_string(cutIndex));
  const Cut& cut = p.cuts[cutIndex];
  if (cut.positive.kind() != TreeKind::Leaf) {
    throw PreconditionViolated("cut " + std::to_string(cutIndex) + " is not atomic: " + printCut(cut));
  }
  ExpansionProof out = p;
  out.cuts.erase(out.cuts.begin() + static_cast<long>(cutIndex));
  if (record) {
    record->kind = StepKind::Atomic;
    record->classFormula = printFormula(cut.cutFormula());
    record->cutIndex = cutIndex;
  }
  return out;
}

ExpansionProof dedup(const ExpansionProof& p) {
  ExpansionProof out;
  std::set<std::string> seen;
  for (const auto& c : p.cuts) {
    if (seen.insert(printCut(c)).second) out.cuts.push_back(c);
  }
  seen.clear();
  for (const auto& t : p.trees) {
    if (seen.insert(printTree(t)).second) out.trees.push_back(t);
  }
  return out;
}

ExpansionProof reduceClass(const ExpansionProof& p, const CutClass& c, ReductionContext& ctx,
                           std::vector<ReductionStep>* records, bool snapshots) {
  auto note = [&](ReductionStep& s, const ExpansionProof& before, const ExpansionProof& after) {
    if (!records) return;
    if (snapshots) {
      s.before = canonicalPrint(before);
      s.after = canonicalPrint(after);
    }
    records->push_back(std::move(s));
  };
  switch (p.cuts.at(c.members.front()).positive.kind()) {
    case TreeKind::Exists: {
      ReductionStep s;
      auto next = reduceQuantifier(p, c, ctx, &s);
      note(s, p, next);
      return next;
    }
    case TreeKind::Or: {
      ReductionStep s;
      auto next = reducePropositional(p, c, &s);
      note(s, p, next);
      return next;
    }
    case TreeKind::Leaf: {
      if (!records || !snapshots) {
        // same result as the one-at-a-time loop without copying the proof per cut
        ExpansionProof out;
        out.trees = p.trees;
        std::size_t removed = 0;
        for (std::size_t i = 0; i < p.cuts.size(); ++i) {
          if (!isMember(c, i)) {
            out.cuts.push_back(p.cuts[i]);
            continue;
          }
          if (p.cuts[i].positive.kind() != TreeKind::Leaf) {
            throw PreconditionViolated("cut " + std::to_string(i) + " is not atomic: " + printCut(p.cuts[i]));
          }
          if (records) {
            ReductionStep s;
            s.kind = StepKind::Atomic;
            s.classFormula = printFormula(p.cuts[i].cutFormula());
            s.cutIndex = i - removed;
            records->push_back(std::move(s));
          }
          ++removed;
        }
        return out;
      }
      ExpansionProof cur = p;
      // members shift down as earlier ones disappear
      std::size_t removed = 0;
      for (auto m : c.members) {
        ReductionStep s;
        auto next = reduceAtomic(cur, m - removed, &s);
        ++removed;
        note(s, cur, next);
        cur = std::move(next);
      }
      return cur;
    }
    default:
      throw PreconditionViolated("cut formula " + printFormula(c.classFormula) + " has no positive side");
  }
}

ReductionTrace normalize(const ExpansionProof& p, const Strategy& strategy, const NormalizeOptions& options) {
  if (options.checkInput) {
    auto report = checkProof(p, options.check);
    if (!report.ok()) throw InvalidInput("not an expansion proof:\n" + report.format());
  }
  ReductionContext ctx(p);
  ReductionTrace trace;
  ExpansionProof cur = p;
  while (!cur.cuts.empty()) {
    if (trace.macroSteps >= options.maxSteps) {
      throw MaxStepsExceeded("no cut-free proof after " + std::to_string(options.maxSteps) + " steps");
    }
    auto classes = cutClasses(cur);
    std::size_t chosen = 0;
    std::optional<std::size_t> preferred;
    if (strategy.kind == Strategy::Kind::Select) {
      preferred = strategy.select(cur, classes);
      if (*preferred >= classes.size()) throw InvalidInput("selected class out of range");
    } else if (strategy.kind == Strategy::Kind::Class && strategy.classFormula) {
      for (std::size_t i = 0; i < classes.size(); ++i) {
        if (alphaEqual(classes[i].classFormula, *strategy.classFormula)) preferred = i;
      }
    }
    if (preferred) {
      chosen = *preferred;
    } else {
      auto max = maximalClasses(cur, classes);
      if (max.empty()) throw NoMaximalClass("every class of maximal rank lies below another cut of that rank");
      chosen = max.front();
    }
    trace.measures.push_back(measure(cur));
    cur = reduceClass(cur, classes[chosen], ctx, &trace.steps, options.snapshots);
    if (options.dedup) {
      cur = dedup(cur);
      if (options.snapshots && !trace.steps.empty()) trace.steps.back().after = canonicalPrint(cur);
    }
    ++trace.macroSteps;
    if (options.verifyEachStep) {
      auto report = checkProof(cur, options.check);
      if (!report.ok()) {
        throw VerificationFailed("step " + std::to_string(trace.macroSteps) + " broke the proof:\n" +
                                 report.format());
      }
    }
  }
  trace.finalProof = std::move(cur);
  return trace;
}

}  // namespace expcut

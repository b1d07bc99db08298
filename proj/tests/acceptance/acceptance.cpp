// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "expcut/check.hpp"
#include "expcut/cutelim.hpp"
#include "expcut/dependency.hpp"
#include "expcut/errors.hpp"
#include "expcut/lk.hpp"
#include "expcut/syntax.hpp"
#include "expcut/tautology.hpp"
#include "generators.hpp"
#include "oracle.hpp"

using namespace expcut;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

std::string readData(const std::string& name) {
  std::ifstream f(std::string(EXPCUT_DATA_DIR) + "/" + name);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::set<std::string> shallowSet(const ExpansionProof& p) {
  std::set<std::string> out;
  for (const auto& f : shallowSequent(p)) out.insert(formulaKey(f));
  return out;
}

std::size_t nesting(const ExpansionTree& e) {
  switch (e.kind()) {
    case TreeKind::Leaf:
      return 0;
    case TreeKind::And:
    case TreeKind::Or:
      return 1 + std::max(nesting(e.left()), nesting(e.right()));
    case TreeKind::Forall:
      return 1 + nesting(e.child());
    case TreeKind::Exists: {
      std::size_t d = 0;
      for (const auto& i : e.instances()) d = std::max(d, nesting(i.child));
      return 1 + d;
    }
  }
  return 0;
}

std::size_t nesting(const ExpansionProof& p) {
  std::size_t d = 0;
  for (const auto& c : p.cuts) d = std::max({d, nesting(c.positive), nesting(c.negative)});
  for (const auto& t : p.trees) d = std::max(d, nesting(t));
  return d;
}

// Criterion 1: the two-formula example.
Outcome exampleGolden() {
  Outcome o;
  auto start = Clock::now();
  auto p = parseExpansionProof(readData("example.exp"));
  auto report = checkProof(p);
  if (!report.ok()) o.fail("checks failed:\n" + report.format());
  DependencyGraph g(p);
  std::set<std::string> edges;
  for (auto [a, b] : g.edges()) edges.insert(g.label(a) + " < " + g.label(b));
  std::set<std::string> expected = {
      "∀gamma < ∃f(gamma)", "∀beta < ∃beta",   "∀alpha < ∃alpha", "∃a < ∀gamma",  "∀beta < ∃alpha",
      "∀alpha < ∃beta",     "cut#0 < ∃a",       "cut#0 < ∀gamma",  "cut#0 < ∀beta", "cut#0 < ∃alpha",
  };
  if (edges != expected || g.edgeCount() != 10) {
    std::string got;
    for (const auto& e : edges) got += " [" + e + "]";
    o.fail("edge set differs:" + got);
  }
  if (g.inDegree(*g.cutNode(0)) != 0) o.fail("edges into the cut");
  auto dp = deepSequent(p);
  if (!isTautology(dp).valid || !oracle::truthTableValid(dp)) o.fail("deep sequent not certified");
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (secs >= 1.0) o.fail("took " + std::to_string(secs) + " s");
  if (o.ok) o.detail = "all four checks ok, 10 edges, none into the cut, deep sequent valid";
  return o;
}

// Criterion 2: quantifier step on two cuts sharing gamma.
Outcome quantifierGolden() {
  Outcome o;
  auto p = parseExpansionProof(readData("shared_class.exp"));
  auto classes = cutClasses(p);
  if (classes.size() != 1 || classes[0].members.size() != 2) {
    o.fail("expected one class of two cuts");
    return o;
  }
  ReductionContext ctx(p);
  ReductionStep rec;
  auto p1 = reduceQuantifier(p, classes[0], ctx, &rec);
  if (!rec.renamed.empty()) o.fail("renamed set should be empty");
  std::vector<std::string> want1 = {
      "cut (ex y P(q,y) +[f(q,q)] P(q,f(q,q))) (all y ~P(q,y) +[gamma] ~P(q,gamma))",
      "cut (ex y P(q,y) +[f(q,q)] P(q,f(q,q))) (all y ~P(q,y) +[gamma] ~P(q,gamma))",
      "cut (ex y P(q,y) +[g(q,q)] P(q,g(q,q))) (all y ~P(q,y) +[gamma] ~P(q,gamma))",
      "cut (ex y P(q,y) +[g(q,q)] P(q,g(q,q))) (all y ~P(q,y) +[gamma] ~P(q,gamma))",
  };
  if (oracle::sortedLines(p1) != want1) o.fail("first step:\n" + canonicalPrint(p1));
  auto classes1 = cutClasses(p1);
  if (classes1.size() != 1) {
    o.fail("first step should leave one class");
    return o;
  }
  ReductionStep rec2;
  auto p2 = reduceQuantifier(p1, classes1[0], ctx, &rec2);
  std::vector<std::string> want2;
  for (int i = 0; i < 8; ++i) want2.push_back("cut P(q,f(q,q)) ~P(q,f(q,q))");
  for (int i = 0; i < 8; ++i) want2.push_back("cut P(q,g(q,q)) ~P(q,g(q,q))");
  if (oracle::sortedLines(p2) != want2) o.fail("second step:\n" + canonicalPrint(p2));
  if (!rec2.renamed.empty()) o.fail("second step renamed variables");
  if (o.ok) o.detail = "4 cuts (two identical pairs, no renaming), then 16 atomic cuts, 8 of each";
  return o;
}

// Criterion 3: the bridge example.
Outcome bridge() {
  Outcome o;
  auto p = parseExpansionProof(readData("bridge.exp"));
  NormalizeOptions opts;
  opts.verifyEachStep = true;
  auto t = normalize(p, Strategy::maximal(), opts);
  if (t.macroSteps > 3) o.fail(std::to_string(t.macroSteps) + " macro steps");
  if (!t.finalProof.cutFree()) o.fail("cuts left");
  for (const auto& tr : t.finalProof.trees) {
    if (printTree(tr) != "true") o.fail("tree " + printTree(tr));
  }
  if (shallowSet(t.finalProof) != std::set<std::string>{"true"}) o.fail("shallow sequent is not {true}");
  opts.dedup = true;
  auto d = normalize(p, Strategy::maximal(), opts);
  if (oracle::sortedLines(d.finalProof) != std::vector<std::string>{"tree true"}) {
    o.fail("with dedup:\n" + canonicalPrint(d.finalProof));
  }
  if (o.ok) o.detail = std::to_string(t.macroSteps) + " macro steps, trees all true; dedup leaves one tree";
  return o;
}

// Criterion 4: two strategies, two normal forms.
Outcome nonConfluence() {
  Outcome o;
  auto p = parseExpansionProof(readData("nonconfluence.exp"));
  NormalizeOptions opts;
  opts.checkInput = false;  // the schematic instance is not valid on its own
  auto aFirst = normalize(p, Strategy::preferClass(parseFormula("ex x R(x)")), opts).finalProof;
  auto bFirst = normalize(p, Strategy::preferClass(parseFormula("ex x S(x)")), opts).finalProof;
  auto treeLine = [](const std::string& a, const std::string& b) {
    return "tree (ex x ex y T(x,y) +[" + a + "] (ex y T(" + a + ",y) +[" + b + "] T(" + a + "," + b + ")))";
  };
  std::vector<std::string> wantA;
  for (const char* a : {"alpha", "s", "t"}) {
    for (const char* b : {"beta", "alpha", "s", "t"}) wantA.push_back(treeLine(a, b));
  }
  std::vector<std::string> wantB = {treeLine("alpha", "beta"), treeLine("alpha", "alpha")};
  for (int rep = 0; rep < 2; ++rep) {
    for (auto [a, b] : {std::pair{"s", "beta"}, {"s", "s"}, {"t", "beta"}, {"t", "t"}}) {
      wantB.push_back(treeLine(a, b));
    }
  }
  std::sort(wantA.begin(), wantA.end());
  std::sort(wantB.begin(), wantB.end());
  if (oracle::sortedLines(aFirst) != wantA) o.fail("R first:\n" + canonicalPrint(aFirst));
  if (oracle::sortedLines(bFirst) != wantB) o.fail("S first:\n" + canonicalPrint(bFirst));
  if (oracle::equalModuloRenaming(aFirst, bFirst)) o.fail("normal forms coincide");
  if (o.ok) o.detail = "R first: 12 trees, S first: 10 trees; different normal forms";
  return o;
}

std::vector<ExpansionProof> corpus(std::size_t n) {
  gen::Rng rng(20261019);
  gen::LKParams params;
  params.height = 9;
  params.pairComplexity = 3;
  params.maxCuts = 6;
  std::vector<ExpansionProof> out;
  std::size_t attempts = 0;
  while (out.size() < n && attempts < 100 * n) {
    ++attempts;
    auto pi = gen::lkProof(rng, params);
    if (!checkLK(pi, true).ok()) continue;
    ExpansionProof p = expand(pi);
    if (p.cuts.empty() || p.cuts.size() > 6 || nesting(p) > 4) continue;
    out.push_back(std::move(p));
  }
  return out;
}

// Criterion 5: every single reduction step is sound.
Outcome stepSoundness(const std::vector<ExpansionProof>& proofs) {
  Outcome o;
  std::size_t steps = 0;
  for (std::size_t i = 0; i < proofs.size() && o.ok; ++i) {
    ExpansionProof cur = proofs[i];
    if (!checkProof(cur).ok()) {
      o.fail("corpus proof " + std::to_string(i) + " is not an expansion proof");
      break;
    }
    auto sh = shallowSet(cur);
    ReductionContext ctx(cur);
    auto verify = [&](const ExpansionProof& next, const std::string& what) {
      ++steps;
      auto r = checkProof(next);
      if (!r.ok()) o.fail("proof " + std::to_string(i) + ", " + what + ":\n" + r.format() + canonicalPrint(next));
      if (shallowSet(next) != sh) o.fail("proof " + std::to_string(i) + ", " + what + ": shallow sequent changed");
    };
    for (std::size_t guard = 0; !cur.cuts.empty() && o.ok && guard < 10000; ++guard) {
      CutClass c = findMaximalClass(cur);
      auto kind = cur.cuts[c.members.front()].positive.kind();
      if (kind == TreeKind::Leaf) {
        for (std::size_t k = 0; k < c.members.size() && o.ok; ++k) {
          auto next = reduceAtomic(cur, c.members[k] - k);
          verify(next, "atomic step");
          cur = std::move(next);
        }
      } else if (kind == TreeKind::Or) {
        auto next = reducePropositional(cur, c);
        verify(next, "propositional step");
        cur = std::move(next);
      } else {
        auto next = reduceQuantifier(cur, c, ctx);
        verify(next, "quantifier step");
        cur = std::move(next);
      }
    }
  }
  if (o.ok) o.detail = std::to_string(proofs.size()) + " proofs, " + std::to_string(steps) + " steps, all sound";
  return o;
}

// Criterion 6: weak normalization under the maximal strategy.
Outcome weakNormalization(const std::vector<ExpansionProof>& proofs) {
  Outcome o;
  double worst = 0;
  for (std::size_t i = 0; i < proofs.size() && o.ok; ++i) {
    auto start = Clock::now();
    ReductionTrace t;
    try {
      t = normalize(proofs[i]);
    } catch (const Error& e) {
      o.fail("proof " + std::to_string(i) + ": " + e.what());
      break;
    }
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    worst = std::max(worst, secs);
    if (secs >= 5.0) o.fail("proof " + std::to_string(i) + " took " + std::to_string(secs) + " s");
    if (!t.finalProof.cutFree()) o.fail("proof " + std::to_string(i) + " not cut-free");
    for (std::size_t k = 1; k < t.measures.size(); ++k) {
      if (!(t.measures[k] < t.measures[k - 1])) o.fail("proof " + std::to_string(i) + ": measure did not decrease");
    }
    if (shallowSet(t.finalProof) != shallowSet(proofs[i])) o.fail("proof " + std::to_string(i) + ": end-sequent changed");
  }
  if (o.ok) {
    std::ostringstream ss;
    ss << proofs.size() << " proofs cut-free, measures strictly decreasing, slowest " << worst << " s";
    o.detail = ss.str();
  }
  return o;
}

std::vector<std::string> keys(const std::vector<Formula>& s) {
  std::vector<std::string> out;
  for (const auto& f : s) out.push_back(formulaKey(f));
  std::sort(out.begin(), out.end());
  return out;
}

std::set<std::string> keySet(const std::vector<Formula>& s) {
  auto k = keys(s);
  return {k.begin(), k.end()};
}

// Criterion 7: LK round trip.
Outcome roundTrip() {
  Outcome o;
  gen::Rng rng(7);
  gen::LKParams params;
  params.height = 6;
  std::size_t n = 0, withCuts = 0;
  for (; n < 250 && o.ok; ++n) {
    auto pi = gen::lkProof(rng, params);
    std::string id = "proof " + std::to_string(n);
    if (depth(pi) > 6) o.fail(id + " too deep");
    auto lk = checkLK(pi, true);
    if (!lk.ok()) {
      o.fail(id + " is not regular: " + lk.violations.front());
      break;
    }
    if (cutCount(pi)) ++withCuts;
    try {
      auto p = expand(pi);
      auto r = checkProof(p);
      if (!r.ok()) o.fail(id + ": expansion fails checks\n" + r.format() + printLKProof(pi));
      if (keys(shallowSequent(p)) != keys(pi.conclusion)) o.fail(id + ": end-sequent differs");
      if (p.cuts.size() != cutCount(pi)) o.fail(id + ": cut count differs");
      auto back = sequentialize(p);
      auto lk2 = checkLK(back, false, SequentSemantics::Set);
      if (!lk2.ok()) o.fail(id + ": sequentialized proof incorrect: " + lk2.violations.front());
      if (keySet(back.conclusion) != keySet(pi.conclusion)) o.fail(id + ": sequentialized end-sequent differs");
      if (cutCount(pi) == 0 && (!p.cutFree() || cutCount(back) != 0)) o.fail(id + ": cut-freeness lost");
    } catch (const Error& e) {
      o.fail(id + ": " + e.what() + "\n" + printLKProof(pi));
    }
  }
  if (o.ok) o.detail = std::to_string(n) + " regular LK proofs (" + std::to_string(withCuts) + " with cuts) round-trip";
  return o;
}

// Criterion 8: substitution commutes with shallow, deep and branches.
Outcome substitutionCommutes() {
  Outcome o;
  gen::Rng rng(8);
  std::size_t n = 0;
  for (; n < 600 && o.ok; ++n) {
    FreshNames names;
    Formula f = gen::formula(rng, {"u", "v"}, 4);
    ExpansionTree e = gen::tree(rng, f, names);
    Substitution s = gen::permittedSubstitution(rng, e);
    ExpansionTree es = applySubstitution(e, s);
    if (!(es.shallow() == substitute(e.shallow(), s))) o.fail("shallow: " + printTree(e));
    if (!(deep(es) == substitute(deep(e), s))) o.fail("deep: " + printTree(e));
    std::vector<std::string> want, got;
    for (const auto& b : branches(e)) {
      Branch bs;
      for (const auto& el : b) bs.push_back(el.formula ? BranchElement::of(substitute(*el.formula, s)) : el);
      want.push_back(printBranch(bs));
    }
    for (const auto& b : branches(es)) got.push_back(printBranch(b));
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    if (want != got) o.fail("branches: " + printTree(e));
  }
  if (o.ok) o.detail = std::to_string(n) + " (tree, substitution) pairs";
  return o;
}

// Criterion 9: tautology checker against truth tables.
Outcome tautologyOracle() {
  Outcome o;
  gen::Rng rng(9);
  std::size_t valid = 0, n = 0;
  for (; n < 1000 && o.ok; ++n) {
    int atoms = 1 + static_cast<int>(rng() % 12);
    auto s = gen::qfSequent(rng, atoms);
    bool mine = isTautology(s).valid;
    bool ref = oracle::truthTableValid(s);
    if (mine != ref) o.fail("disagreement on " + printSequent(s));
    valid += ref;
  }
  if (o.ok) o.detail = std::to_string(n) + " sequents, " + std::to_string(valid) + " valid, no disagreement";
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, Outcome>> results;
  auto run = [&](const std::string& name, auto f) {
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << name << ": " << (o.ok ? "PASS" : "FAIL") << " - " << o.detail << std::endl;
    results.emplace_back(name, o);
  };
  run("criterion 1 (example golden)", exampleGolden);
  run("criterion 2 (quantifier step golden)", quantifierGolden);
  run("criterion 3 (bridge)", bridge);
  run("criterion 4 (non-confluence)", nonConfluence);
  std::vector<ExpansionProof> proofs;
  try {
    proofs = corpus(220);
  } catch (const std::exception& e) {
    std::cout << "corpus generation failed: " << e.what() << std::endl;
  }
  run("criterion 5 (step soundness)", [&] {
    Outcome o = proofs.size() >= 200 ? stepSoundness(proofs) : Outcome{false, "corpus too small: " + std::to_string(proofs.size())};
    return o;
  });
  run("criterion 6 (weak normalization)", [&] {
    Outcome o = proofs.size() >= 200 ? weakNormalization(proofs) : Outcome{false, "corpus too small"};
    return o;
  });
  run("criterion 7 (LK round trip)", roundTrip);
  run("criterion 8 (substitution)", substitutionCommutes);
  run("criterion 9 (tautology oracle)", tautologyOracle);
  bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.second.ok; });
  return all ? 0 : 1;
}

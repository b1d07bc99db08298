#include <algorithm>
#include <map>

#include "expcut/dependency.hpp"
#include "expcut/errors.hpp"
#include "expcut/lk.hpp"
#include "expcut/syntax.hpp"

namespace expcut {

namespace {

// One sequent of the LKE derivation: a proof line plus formulas kept only by weakening.
struct State {
  ExpansionProof line;
  std::vector<Formula> weakened;
};

std::vector<Formula> conclusionOf(const State& s) {
  std::vector<Formula> out;
  std::set<std::string> seen;
  auto add = [&](const Formula& f) {
    if (seen.insert(formulaKey(f)).second) out.push_back(f);
  };
  for (const auto& t : s.line.trees) add(t.shallow());
  for (const auto& f : s.weakened) add(f);
  return out;
}

bool isConstant(const Formula& f, std::string_view name) {
  return f.kind() == FormulaKind::PosAtom && f.arguments().empty() && f.predicate() == name;
}

std::optional<Formula> initialAtom(const std::vector<Formula>& concl) {
  std::set<std::string> keys;
  for (const auto& f : concl) keys.insert(formulaKey(f));
  for (const auto& f : concl) {
    if (isConstant(f, kTrueAtom)) return f;
    if (f.kind() == FormulaKind::NegAtom && isConstant(dual(f), kFalseAtom)) return dual(f);
  }
  for (const auto& f : concl) {
    if (f.kind() == FormulaKind::PosAtom && keys.count(formulaKey(dual(f)))) return f;
  }
  return std::nullopt;
}

struct Step {
  LKProof node;
  std::vector<State> premises;
};

class Sequentializer {
 public:
  explicit Sequentializer(const SequentializeOptions& o) : opts_(o) {}

  Step step(const State& s) {
    Step out;
    out.node.conclusion = conclusionOf(s);
    if (opts_.debugChecks && !checkAcyclicity(s.line).ok) throw Stuck("intermediate line is cyclic");

    if (auto a = initialAtom(out.node.conclusion)) {
      out.node.rule = LKRule::Init;
      out.node.formula = *a;
      return out;
    }
    const auto& trees = s.line.trees;
    for (TreeKind k : {TreeKind::Or, TreeKind::And}) {
      for (std::size_t i = 0; i < trees.size(); ++i) {
        if (trees[i].kind() != k) continue;
        if (k == TreeKind::Or) {
          out.node.rule = LKRule::Or;
          State p = s;
          p.line.trees.erase(p.line.trees.begin() + static_cast<long>(i));
          p.line.trees.push_back(trees[i].left());
          p.line.trees.push_back(trees[i].right());
          out.premises.push_back(std::move(p));
        } else {
          out.node.rule = LKRule::And;
          for (const auto* side : {&trees[i].left(), &trees[i].right()}) {
            State p = s;
            p.line.trees.erase(p.line.trees.begin() + static_cast<long>(i));
            p.line.trees.push_back(*side);
            out.premises.push_back(std::move(p));
          }
        }
        return out;
      }
    }

    DependencyGraph g(s.line);
    std::optional<std::pair<std::string, std::size_t>> best;
    for (std::size_t n = 0; n < g.size(); ++n) {
      const DepNode& d = g.node(n);
      if (g.inDegree(n) != 0) continue;
      std::string key;
      if (d.kind == DepNode::Kind::Cut) {
        key = "0 " + printCut(s.line.cuts[d.cutIndex]);
      } else if (d.topLevel) {
        const ExpansionTree& t = s.line.trees[d.path.index];
        key = (d.kind == DepNode::Kind::Forall ? "1 " : "2 ") + printTree(t) + " " +
              (d.term ? printTerm(*d.term) : d.eigenvariable);
      } else {
        continue;
      }
      if (!best || key < best->first) best = std::make_pair(key, n);
    }
    if (!best) {
      throw Stuck("no inference applies to " + printSequent(out.node.conclusion) + " with line\n" +
                  printExpansionProof(s.line));
    }
    const DepNode& d = g.node(best->second);
    switch (d.kind) {
      case DepNode::Kind::Cut:
        cutStep(s, d.cutIndex, out);
        break;
      case DepNode::Kind::Exists:
        existsStep(s, d.path.index, *d.term, out);
        break;
      case DepNode::Kind::Forall:
        forallStep(s, d.eigenvariable, out);
        break;
    }
    return out;
  }

 private:
  static void cutStep(const State& s, std::size_t index, Step& out) {
    std::string key = formulaKey(s.line.cuts[index].cutFormula());
    State pos = s, neg = s;
    pos.line.cuts.clear();
    neg.line.cuts.clear();
    for (const auto& c : s.line.cuts) {
      if (formulaKey(c.cutFormula()) == key) {
        pos.line.trees.push_back(c.positive);
        neg.line.trees.push_back(c.negative);
      } else {
        pos.line.cuts.push_back(c);
        neg.line.cuts.push_back(c);
      }
    }
    out.node.rule = LKRule::Cut;
    out.node.formula = s.line.cuts[index].cutFormula();
    out.premises.push_back(std::move(pos));
    out.premises.push_back(std::move(neg));
  }

  static void existsStep(const State& s, std::size_t treeIndex, const Term& t, Step& out) {
    const Formula& f = s.line.trees[treeIndex].shallow();
    std::string key = formulaKey(f);
    State p;
    p.line.cuts = s.line.cuts;
    p.weakened = s.weakened;
    std::vector<ExpansionTree> children;
    for (const auto& tree : s.line.trees) {
      if (tree.kind() != TreeKind::Exists || formulaKey(tree.shallow()) != key) {
        p.line.trees.push_back(tree);
        continue;
      }
      std::vector<Instance> rest;
      for (const auto& inst : tree.instances()) {
        if (inst.term == t) {
          children.push_back(inst.child);
        } else {
          rest.push_back(inst);
        }
      }
      if (rest.empty()) {
        p.weakened.push_back(tree.shallow());
      } else {
        p.line.trees.push_back(ExpansionTree::exists(tree.binder(), tree.matrix(), std::move(rest)));
      }
    }
    p.line.trees.insert(p.line.trees.end(), children.begin(), children.end());
    out.node.rule = LKRule::Exists;
    out.node.witness = t;
    out.premises.push_back(std::move(p));
  }

  static void forallStep(const State& s, const std::string& alpha, Step& out) {
    State p = s;
    for (auto& tree : p.line.trees) {
      if (tree.kind() == TreeKind::Forall && tree.eigenvariable() == alpha) tree = ExpansionTree(tree.child());
    }
    out.node.rule = LKRule::Forall;
    out.node.eigenvariable = alpha;
    out.premises.push_back(std::move(p));
  }

  const SequentializeOptions& opts_;
};

const char* ruleName(LKRule r) {
  switch (r) {
    case LKRule::Init: return "init";
    case LKRule::Forall: return "forall";
    case LKRule::Exists: return "exists";
    case LKRule::And: return "and";
    case LKRule::Or: return "or";
    case LKRule::Cut: return "cut";
  }
  return "?";
}

}  // namespace

LKProof sequentialize(const ExpansionProof& p, const SequentializeOptions& options) {
  if (options.checkInput) {
    auto report = checkProof(p, options.check);
    if (!report.ok()) throw InvalidInput("not an expansion proof:\n" + report.format());
  }
  Sequentializer seq(options);
  LKProof root;
  std::vector<std::pair<State, LKProof*>> work;
  work.emplace_back(State{p, {}}, &root);
  while (!work.empty()) {
    auto [state, slot] = std::move(work.back());
    work.pop_back();
    Step st = seq.step(state);
    if (options.trace) options.trace->push_back(LKESnapshot{ruleName(st.node.rule), state.line, state.weakened});
    *slot = std::move(st.node);
    slot->premises.resize(st.premises.size());
    // push in reverse so the first premise is handled first (preorder trace)
    for (std::size_t i = st.premises.size(); i-- > 0;) {
      work.emplace_back(std::move(st.premises[i]), &slot->premises[i]);
    }
  }
  auto report = checkLK(root, false, SequentSemantics::Set);
  if (!report.ok()) {
    std::string msg = "sequentialization produced an incorrect LK proof";
    for (const auto& v : report.violations) msg += "\n  " + v;
    throw Stuck(msg);
  }
  return root;
}

std::string printLKETrace(const std::vector<LKESnapshot>& trace) {
  std::string out;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& s = trace[i];
    out += "step " + std::to_string(i) + ": " + s.rule + "\n";
    std::string body = printExpansionProof(s.line);
    std::size_t start = 0;
    while (start < body.size()) {
      auto end = body.find('\n', start);
      if (end == std::string::npos) end = body.size();
      out += "  " + body.substr(start, end - start) + "\n";
      start = end + 1;
    }
    if (!s.weakened.empty()) out += "  weakened " + printSequent(s.weakened) + "\n";
  }
  return out;
}

}  // namespace expcut

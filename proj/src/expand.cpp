#include <map>
#include <numeric>

#include "expcut/errors.hpp"
#include "expcut/lk.hpp"
#include "expcut/syntax.hpp"

namespace expcut {

namespace {

struct Partial {
  std::vector<Cut> cuts;
  std::vector<ExpansionTree> trees;
  std::vector<bool> weakened;

  std::set<std::string> names() const {
    std::set<std::string> out;
    for (const auto& c : cuts) {
      collectNames(c.positive, out);
      collectNames(c.negative, out);
    }
    for (const auto& t : trees) collectNames(t, out);
    return out;
  }
  std::set<std::string> eigen() const {
    std::set<std::string> out;
    for (const auto& c : cuts) {
      collectEigenvariables(c.positive, out);
      collectEigenvariables(c.negative, out);
    }
    for (const auto& t : trees) collectEigenvariables(t, out);
    return out;
  }
  void rename(const Substitution& s) {
    if (s.empty()) return;
    for (auto& c : cuts) c = applySubstitution(c, s);
    for (auto& t : trees) t = applySubstitution(t, s);
  }
};

// Eigenvariable pairs that must coincide when two trees of one formula are merged.
void pairUp(const ExpansionTree& a, const ExpansionTree& b, std::vector<std::pair<std::string, std::string>>& out) {
  switch (a.kind()) {
    case TreeKind::Leaf:
    case TreeKind::Exists:
      return;
    case TreeKind::And:
    case TreeKind::Or:
      pairUp(a.left(), b.left(), out);
      pairUp(a.right(), b.right(), out);
      return;
    case TreeKind::Forall:
      if (a.eigenvariable() != b.eigenvariable()) out.emplace_back(a.eigenvariable(), b.eigenvariable());
      pairUp(a.child(), b.child(), out);
      return;
  }
}

ExpansionTree merge(const ExpansionTree& a, const ExpansionTree& b) {
  switch (a.kind()) {
    case TreeKind::Leaf:
      return a;
    case TreeKind::And:
    case TreeKind::Or:
      return ExpansionTree::binary(a.kind(), merge(a.left(), b.left()), merge(a.right(), b.right()));
    case TreeKind::Exists: {
      std::vector<Instance> inst(a.instances().begin(), a.instances().end());
      inst.insert(inst.end(), b.instances().begin(), b.instances().end());
      return ExpansionTree::exists(a.binder(), a.matrix(), std::move(inst));
    }
    case TreeKind::Forall:
      if (a.eigenvariable() != b.eigenvariable()) throw Error("internal: unmerged eigenvariables");
      return ExpansionTree::forall(a.binder(), a.matrix(), a.eigenvariable(), merge(a.child(), b.child()));
  }
  throw Error("internal: bad tree kind");
}

struct UnionFind {
  std::map<std::string, std::string> parent;
  std::string find(const std::string& x) {
    auto it = parent.find(x);
    if (it == parent.end()) {
      parent[x] = x;
      return x;
    }
    if (it->second == x) return x;
    std::string r = find(it->second);
    parent[x] = r;
    return r;
  }
  void unite(const std::string& a, const std::string& b) { parent[find(b)] = find(a); }
};

class Translator {
 public:
  explicit Translator(FreshNames& names) : names_(names) {}

  Partial run(const LKProof& node) {
    std::string why;
    auto m = matchInference(node, SequentSemantics::Multiset, &why);
    if (!m) throw NotRegular("inference does not fit its rule: " + why);
    std::size_t n = node.conclusion.size();
    Partial out;
    out.trees.reserve(n);
    switch (node.rule) {
      case LKRule::Init: {
        const Formula& a = *node.formula;
        bool isTrue = a.arguments().empty() && a.predicate() == kTrueAtom;
        bool isFalse = a.arguments().empty() && a.predicate() == kFalseAtom;
        std::string posKey = isFalse ? "" : formulaKey(a);
        std::string negKey = isTrue ? "" : formulaKey(dual(a));
        bool posDone = false, negDone = false;
        for (const auto& f : node.conclusion) {
          std::string k = formulaKey(f);
          if (!posDone && k == posKey) {
            posDone = true;
            out.trees.push_back(ExpansionTree::leaf(f));
            out.weakened.push_back(false);
          } else if (!negDone && k == negKey) {
            negDone = true;
            out.trees.push_back(ExpansionTree::leaf(f));
            out.weakened.push_back(false);
          } else {
            out.trees.push_back(coerceWeakening(f, names_));
            out.weakened.push_back(true);
          }
        }
        return out;
      }
      case LKRule::Or:
      case LKRule::Forall:
      case LKRule::Exists: {
        Partial r = run(node.premises[0]);
        out.cuts = std::move(r.cuts);
        auto slots = place(*m, 0, n);
        for (std::size_t j = 0; j < n; ++j) {
          if (static_cast<int>(j) == m->principal) {
            out.trees.push_back(principalTree(node, *m, r, slots[j]));
            out.weakened.push_back(principalWeakened(node, *m, r));
          } else {
            out.trees.push_back(r.trees[slots[j]]);
            out.weakened.push_back(r.weakened[slots[j]]);
          }
        }
        return out;
      }
      case LKRule::And:
      case LKRule::Cut: {
        Partial r0 = run(node.premises[0]);
        Partial r1 = run(node.premises[1]);
        auto s0 = place(*m, 0, n);
        auto s1 = place(*m, 1, n);
        unify(r0, r1, s0, s1, m->principal);
        std::size_t a0 = m->active[0][0], a1 = m->active[1][0];
        if (node.rule == LKRule::Cut) {
          out.cuts.push_back(Cut::make(r0.trees[a0], r1.trees[a1]));
        }
        out.cuts.insert(out.cuts.end(), r0.cuts.begin(), r0.cuts.end());
        out.cuts.insert(out.cuts.end(), r1.cuts.begin(), r1.cuts.end());
        for (std::size_t j = 0; j < n; ++j) {
          if (static_cast<int>(j) == m->principal) {
            out.trees.push_back(ExpansionTree::conj(r0.trees[a0], r1.trees[a1]));
            out.weakened.push_back(r0.weakened[a0] && r1.weakened[a1]);
            continue;
          }
          std::size_t k0 = s0[j], k1 = s1[j];
          if (r0.weakened[k0]) {
            out.trees.push_back(r1.trees[k1]);
            out.weakened.push_back(r1.weakened[k1]);
          } else if (r1.weakened[k1]) {
            out.trees.push_back(r0.trees[k0]);
            out.weakened.push_back(false);
          } else {
            out.trees.push_back(merge(r0.trees[k0], r1.trees[k1]));
            out.weakened.push_back(false);
          }
        }
        return out;
      }
    }
    throw Error("internal: bad rule");
  }

 private:
  // slots[j]: premise position holding the copy of conclusion formula j
  static std::vector<std::size_t> place(const InferenceMatch& m, std::size_t premise, std::size_t n) {
    std::vector<std::size_t> slots(n, static_cast<std::size_t>(-1));
    const auto& ctx = m.contextOf[premise];
    for (std::size_t k = 0; k < ctx.size(); ++k) {
      if (ctx[k] >= 0) slots[static_cast<std::size_t>(ctx[k])] = k;
    }
    return slots;
  }

  static bool principalWeakened(const LKProof& node, const InferenceMatch& m, const Partial& r) {
    if (node.rule == LKRule::Exists) return false;
    bool w = true;
    for (auto k : m.active[0]) w = w && r.weakened[k];
    return w;
  }

  static ExpansionTree principalTree(const LKProof& node, const InferenceMatch& m, const Partial& r,
                                     std::size_t copySlot) {
    const Formula& f = node.conclusion[static_cast<std::size_t>(m.principal)];
    const auto& act = m.active[0];
    switch (node.rule) {
      case LKRule::Or:
        return ExpansionTree::disj(r.trees[act[0]], r.trees[act[1]]);
      case LKRule::Forall:
        return ExpansionTree::forall(f.binder(), f.body(), node.eigenvariable, r.trees[act[0]]);
      case LKRule::Exists: {
        Instance fresh{*node.witness, r.trees[act[0]]};
        if (r.weakened[copySlot]) return ExpansionTree::exists(f.binder(), f.body(), {fresh});
        const ExpansionTree& e = r.trees[copySlot];
        std::vector<Instance> inst(e.instances().begin(), e.instances().end());
        inst.push_back(fresh);
        return ExpansionTree::exists(e.binder(), e.matrix(), std::move(inst));
      }
      default:
        throw Error("internal: not a unary rule");
    }
  }

  // Makes the eigenvariables of the shared context agree so the copies can be merged.
  void unify(Partial& r0, Partial& r1, const std::vector<std::size_t>& s0, const std::vector<std::size_t>& s1,
             int principal) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t j = 0; j < s0.size(); ++j) {
      if (static_cast<int>(j) == principal) continue;
      if (r0.weakened[s0[j]] || r1.weakened[s1[j]]) continue;
      pairUp(r0.trees[s0[j]], r1.trees[s1[j]], pairs);
    }
    if (pairs.empty()) return;
    UnionFind uf;
    for (const auto& [a, b] : pairs) uf.unite(a, b);
    auto eig0 = r0.eigen();
    auto eig1 = r1.eigen();
    auto names1 = r1.names();
    std::map<std::string, std::vector<std::string>> classes;
    for (const auto& [x, _] : uf.parent) classes[uf.find(x)].push_back(x);
    Substitution ren0, ren1;
    for (const auto& [root, members] : classes) {
      std::vector<std::string> fromA;
      for (const auto& x : members) {
        if (eig0.count(x)) fromA.push_back(x);
      }
      std::string rep;
      if (fromA.size() == 1 && !names1.count(fromA[0])) {
        rep = fromA[0];
      } else {
        rep = names_.fresh(fromA.empty() ? members.front() : fromA.front());
      }
      for (const auto& x : members) {
        if (x == rep) continue;
        if (eig0.count(x)) ren0.emplace(x, Term::symbol(rep));
        if (eig1.count(x)) ren1.emplace(x, Term::symbol(rep));
      }
    }
    r0.rename(ren0);
    r1.rename(ren1);
  }

  FreshNames& names_;
};

void collectLKNames(const LKProof& pi, std::set<std::string>& out) {
  for (const auto& f : pi.conclusion) collectNames(f, out);
  if (pi.formula) collectNames(*pi.formula, out);
  if (pi.witness) collectNames(*pi.witness, out);
  if (!pi.eigenvariable.empty()) out.insert(pi.eigenvariable);
  for (const auto& p : pi.premises) collectLKNames(p, out);
}

}  // namespace

ExpansionProof expand(const LKProof& pi) {
  auto report = checkLK(pi, true, SequentSemantics::Multiset);
  if (!report.ok()) {
    std::string msg = "not a regular LK proof";
    for (const auto& v : report.violations) msg += "\n  " + v;
    throw NotRegular(msg);
  }
  FreshNames names;
  std::set<std::string> used;
  collectLKNames(pi, used);
  names.reserve(used);
  Translator t(names);
  Partial r = t.run(pi);
  return ExpansionProof{std::move(r.cuts), std::move(r.trees)};
}

}  // namespace expcut

#include "expcut/expansion.hpp"

#include "expcut/errors.hpp"
#include "expcut/syntax.hpp"

namespace expcut {

namespace {

Formula instanceOf(const std::string& binder, const Formula& matrix, const Term& t) {
  try {
    return substitute(matrix, Substitution{{binder, t}});
  } catch (const CaptureError& e) {
    throw ShapeError(std::string("instance captures a variable: ") + e.what());
  }
}

}  // namespace

ExpansionTree ExpansionTree::leaf(Formula literal) {
  if (!literal.isLiteral()) {
    throw ShapeError("leaf must be a literal, got " + printFormula(literal));
  }
  return ExpansionTree(std::make_shared<const Node>(Node{TreeKind::Leaf, std::move(literal), {}, {}, {}, {}}));
}

ExpansionTree ExpansionTree::conj(ExpansionTree left, ExpansionTree right) {
  return binary(TreeKind::And, std::move(left), std::move(right));
}

ExpansionTree ExpansionTree::disj(ExpansionTree left, ExpansionTree right) {
  return binary(TreeKind::Or, std::move(left), std::move(right));
}

ExpansionTree ExpansionTree::binary(TreeKind kind, ExpansionTree left, ExpansionTree right) {
  if (kind != TreeKind::And && kind != TreeKind::Or) throw ShapeError("not a binary tree kind");
  Formula sh = kind == TreeKind::And ? Formula::conj(left.shallow(), right.shallow())
                                     : Formula::disj(left.shallow(), right.shallow());
  return ExpansionTree(std::make_shared<const Node>(
      Node{kind, std::move(sh), {}, {}, {std::move(left), std::move(right)}, {}}));
}

ExpansionTree ExpansionTree::exists(std::string binder, Formula matrix, std::vector<Instance> instances) {
  if (instances.empty()) {
    throw ShapeError("existential node needs at least one instance");
  }
  for (const auto& inst : instances) {
    Formula expected = instanceOf(binder, matrix, inst.term);
    if (!alphaEqual(inst.child.shallow(), expected)) {
      throw ShapeError("instance +[" + printTerm(inst.term) + "] has shallow formula " +
                       printFormula(inst.child.shallow()) + ", expected " + printFormula(expected));
    }
  }
  Formula sh = Formula::exists(binder, std::move(matrix));
  return ExpansionTree(std::make_shared<const Node>(
      Node{TreeKind::Exists, std::move(sh), std::move(binder), {}, {}, std::move(instances)}));
}

ExpansionTree ExpansionTree::forall(std::string binder, Formula matrix, std::string eigenvariable,
                                    ExpansionTree child) {
  if (eigenvariable.empty()) throw ShapeError("empty eigenvariable");
  Formula expected = instanceOf(binder, matrix, Term::symbol(eigenvariable));
  if (!alphaEqual(child.shallow(), expected)) {
    throw ShapeError("+[" + eigenvariable + "] child has shallow formula " +
                     printFormula(child.shallow()) + ", expected " + printFormula(expected));
  }
  Formula sh = Formula::forall(binder, std::move(matrix));
  return ExpansionTree(std::make_shared<const Node>(Node{TreeKind::Forall, std::move(sh), std::move(binder),
                                                         std::move(eigenvariable), {std::move(child)}, {}}));
}

bool operator==(const ExpansionTree& a, const ExpansionTree& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.shallow == y.shallow && x.name == y.name &&
         x.eigenvariable == y.eigenvariable && x.children == y.children && x.instances == y.instances;
}

Cut Cut::make(ExpansionTree a, ExpansionTree b) {
  if (!a.shallow().isPositive()) std::swap(a, b);
  if (!a.shallow().isPositive()) {
    throw ShapeError("cut has no positive side: " + printFormula(a.shallow()) + " / " +
                     printFormula(b.shallow()));
  }
  if (!alphaEqual(a.shallow(), dual(b.shallow()))) {
    throw ShapeError("cut sides are not dual: " + printFormula(a.shallow()) + " / " +
                     printFormula(b.shallow()));
  }
  return Cut{std::move(a), std::move(b)};
}

Formula cutFormula(const Cut& c) { return c.positive.shallow(); }

std::vector<Formula> shallowSequent(const ExpansionProof& p) {
  std::vector<Formula> out;
  out.reserve(p.trees.size());
  for (const auto& t : p.trees) out.push_back(t.shallow());
  return out;
}

Formula deep(const ExpansionTree& e) {
  switch (e.kind()) {
    case TreeKind::Leaf:
      return e.literal();
    case TreeKind::And:
      return Formula::conj(deep(e.left()), deep(e.right()));
    case TreeKind::Or:
      return Formula::disj(deep(e.left()), deep(e.right()));
    case TreeKind::Exists: {
      auto inst = e.instances();
      Formula acc = deep(inst[0].child);
      for (std::size_t i = 1; i < inst.size(); ++i) acc = Formula::disj(acc, deep(inst[i].child));
      return acc;
    }
    case TreeKind::Forall:
      return deep(e.child());
  }
  return e.shallow();
}

Formula deepCut(const Cut& c) { return Formula::conj(deep(c.positive), deep(c.negative)); }

std::vector<Formula> deepSequent(const ExpansionProof& p) {
  std::vector<Formula> out;
  for (const auto& t : p.trees) out.push_back(deep(t));
  for (const auto& c : p.cuts) out.push_back(deepCut(c));
  return out;
}

namespace {

void branchesInto(const ExpansionTree& e, Branch& prefix, std::vector<Branch>& out) {
  switch (e.kind()) {
    case TreeKind::Leaf: {
      Branch b = prefix;
      b.push_back(BranchElement::of(e.literal()));
      out.push_back(std::move(b));
      return;
    }
    case TreeKind::And:
    case TreeKind::Or:
      for (int i = 1; i <= 2; ++i) {
        prefix.push_back(BranchElement::of(e.shallow()));
        prefix.push_back(BranchElement::of(i));
        branchesInto(i == 1 ? e.left() : e.right(), prefix, out);
        prefix.pop_back();
        prefix.pop_back();
      }
      return;
    case TreeKind::Exists:
      prefix.push_back(BranchElement::of(e.shallow()));
      for (const auto& inst : e.instances()) branchesInto(inst.child, prefix, out);
      prefix.pop_back();
      return;
    case TreeKind::Forall:
      prefix.push_back(BranchElement::of(e.shallow()));
      branchesInto(e.child(), prefix, out);
      prefix.pop_back();
      return;
  }
}

}  // namespace

std::vector<Branch> branches(const ExpansionTree& e) {
  std::vector<Branch> out;
  Branch prefix;
  branchesInto(e, prefix, out);
  return out;
}

std::vector<Branch> branchesCut(const Cut& c) {
  auto out = branches(c.positive);
  auto more = branches(c.negative);
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

std::vector<Branch> branchesProof(const ExpansionProof& p) {
  std::vector<Branch> out;
  for (const auto& c : p.cuts) {
    auto b = branchesCut(c);
    out.insert(out.end(), b.begin(), b.end());
  }
  for (const auto& t : p.trees) {
    auto b = branches(t);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

std::size_t leafCount(const ExpansionTree& e) {
  switch (e.kind()) {
    case TreeKind::Leaf:
      return 1;
    case TreeKind::And:
    case TreeKind::Or:
      return leafCount(e.left()) + leafCount(e.right());
    case TreeKind::Exists: {
      std::size_t n = 0;
      for (const auto& inst : e.instances()) n += leafCount(inst.child);
      return n;
    }
    case TreeKind::Forall:
      return leafCount(e.child());
  }
  return 0;
}

std::size_t nodeCount(const ExpansionTree& e) {
  switch (e.kind()) {
    case TreeKind::Leaf:
      return 1;
    case TreeKind::And:
    case TreeKind::Or:
      return 1 + nodeCount(e.left()) + nodeCount(e.right());
    case TreeKind::Exists: {
      std::size_t n = 1;
      for (const auto& inst : e.instances()) n += 1 + nodeCount(inst.child);
      return n;
    }
    case TreeKind::Forall:
      return 2 + nodeCount(e.child());
  }
  return 0;
}

std::size_t nodeCount(const ExpansionProof& p) {
  std::size_t n = 0;
  for (const auto& c : p.cuts) n += 1 + nodeCount(c.positive) + nodeCount(c.negative);
  for (const auto& t : p.trees) n += nodeCount(t);
  return n;
}

ExpansionTree coerceWeakening(const Formula& a, FreshNames& names) {
  switch (a.kind()) {
    case FormulaKind::PosAtom:
    case FormulaKind::NegAtom:
      return ExpansionTree::leaf(a);
    case FormulaKind::And:
      return ExpansionTree::conj(coerceWeakening(a.left(), names), coerceWeakening(a.right(), names));
    case FormulaKind::Or:
      return ExpansionTree::disj(coerceWeakening(a.left(), names), coerceWeakening(a.right(), names));
    case FormulaKind::Exists: {
      // +^x with the bound variable itself as the term
      std::vector<Instance> inst;
      inst.push_back({Term::symbol(a.binder()), coerceWeakening(a.body(), names)});
      return ExpansionTree::exists(a.binder(), a.body(), std::move(inst));
    }
    case FormulaKind::Forall: {
      std::string alpha = names.fresh(a.binder());
      Formula body = substitute(a.body(), Substitution{{a.binder(), Term::symbol(alpha)}});
      return ExpansionTree::forall(a.binder(), a.body(), alpha, coerceWeakening(body, names));
    }
  }
  throw ShapeError("unreachable formula kind");
}

namespace {

Formula substituteMatrix(const ExpansionTree& e, const Substitution& sigma) {
  FormulaKind k = e.kind() == TreeKind::Exists ? FormulaKind::Exists : FormulaKind::Forall;
  return substitute(Formula::quantifier(k, e.binder(), e.matrix()), sigma).body();
}

}  // namespace

ExpansionTree applySubstitution(const ExpansionTree& e, const Substitution& sigma) {
  if (sigma.empty()) return e;
  switch (e.kind()) {
    case TreeKind::Leaf: {
      Formula f = substitute(e.literal(), sigma);
      if (f.sameNode(e.literal())) return e;
      return ExpansionTree::leaf(std::move(f));
    }
    case TreeKind::And:
    case TreeKind::Or: {
      auto l = applySubstitution(e.left(), sigma);
      auto r = applySubstitution(e.right(), sigma);
      if (l.sameNode(e.left()) && r.sameNode(e.right())) return e;
      return ExpansionTree::binary(e.kind(), std::move(l), std::move(r));
    }
    case TreeKind::Exists: {
      std::vector<Instance> inst;
      bool changed = false;
      for (const auto& i : e.instances()) {
        Term t = substitute(i.term, sigma);
        auto c = applySubstitution(i.child, sigma);
        changed = changed || !t.sameNode(i.term) || !c.sameNode(i.child);
        inst.push_back({std::move(t), std::move(c)});
      }
      Formula m = substituteMatrix(e, sigma);
      if (!changed && m.sameNode(e.matrix())) return e;
      return ExpansionTree::exists(e.binder(), std::move(m), std::move(inst));
    }
    case TreeKind::Forall: {
      std::string alpha = e.eigenvariable();
      auto it = sigma.find(alpha);
      if (it != sigma.end()) {
        if (!it->second.isSymbol()) {
          throw NotPermitted("eigenvariable " + alpha + " mapped to non-variable " + printTerm(it->second));
        }
        alpha = it->second.name();
      }
      auto c = applySubstitution(e.child(), sigma);
      Formula m = substituteMatrix(e, sigma);
      if (alpha == e.eigenvariable() && c.sameNode(e.child()) && m.sameNode(e.matrix())) return e;
      return ExpansionTree::forall(e.binder(), std::move(m), std::move(alpha), std::move(c));
    }
  }
  return e;
}

Cut applySubstitution(const Cut& c, const Substitution& sigma) {
  return Cut{applySubstitution(c.positive, sigma), applySubstitution(c.negative, sigma)};
}

ExpansionProof applySubstitution(const ExpansionProof& p, const Substitution& sigma) {
  ExpansionProof out;
  for (const auto& c : p.cuts) out.cuts.push_back(applySubstitution(c, sigma));
  for (const auto& t : p.trees) out.trees.push_back(applySubstitution(t, sigma));
  return out;
}

void collectEigenvariables(const ExpansionTree& e, std::set<std::string>& out) {
  switch (e.kind()) {
    case TreeKind::Leaf:
      return;
    case TreeKind::And:
    case TreeKind::Or:
      collectEigenvariables(e.left(), out);
      collectEigenvariables(e.right(), out);
      return;
    case TreeKind::Exists:
      for (const auto& i : e.instances()) collectEigenvariables(i.child, out);
      return;
    case TreeKind::Forall:
      out.insert(e.eigenvariable());
      collectEigenvariables(e.child(), out);
      return;
  }
}

std::set<std::string> eigenvariables(const ExpansionProof& p) {
  std::set<std::string> out;
  for (const auto& c : p.cuts) {
    collectEigenvariables(c.positive, out);
    collectEigenvariables(c.negative, out);
  }
  for (const auto& t : p.trees) collectEigenvariables(t, out);
  return out;
}

void collectNames(const ExpansionTree& e, std::set<std::string>& out) {
  collectNames(e.shallow(), out);
  switch (e.kind()) {
    case TreeKind::Leaf:
      return;
    case TreeKind::And:
    case TreeKind::Or:
      collectNames(e.left(), out);
      collectNames(e.right(), out);
      return;
    case TreeKind::Exists:
      for (const auto& i : e.instances()) {
        collectNames(i.term, out);
        collectNames(i.child, out);
      }
      return;
    case TreeKind::Forall:
      out.insert(e.eigenvariable());
      collectNames(e.child(), out);
      return;
  }
}

std::set<std::string> collectNames(const ExpansionProof& p) {
  std::set<std::string> out;
  for (const auto& c : p.cuts) {
    collectNames(c.positive, out);
    collectNames(c.negative, out);
  }
  for (const auto& t : p.trees) collectNames(t, out);
  return out;
}

bool structurallyEqual(const ExpansionProof& a, const ExpansionProof& b) {
  return a.cuts == b.cuts && a.trees == b.trees;
}

}  // namespace expcut

#pragma once

// Expansion trees, cuts and expansion proofs.

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "expcut/logic.hpp"

namespace expcut {

enum class TreeKind { Leaf, And, Or, Exists, Forall };

class ExpansionTree;

struct Instance;

class ExpansionTree {
 public:
  // The factories check the shape invariants and throw ShapeError.
  static ExpansionTree leaf(Formula literal);
  static ExpansionTree conj(ExpansionTree left, ExpansionTree right);
  static ExpansionTree disj(ExpansionTree left, ExpansionTree right);
  static ExpansionTree binary(TreeKind kind, ExpansionTree left, ExpansionTree right);
  static ExpansionTree exists(std::string binder, Formula matrix, std::vector<Instance> instances);
  static ExpansionTree forall(std::string binder, Formula matrix, std::string eigenvariable,
                              ExpansionTree child);

  TreeKind kind() const;
  const Formula& shallow() const;
  const Formula& literal() const;  // Leaf
  const ExpansionTree& left() const;
  const ExpansionTree& right() const;
  const std::string& binder() const;
  const Formula& matrix() const;
  std::span<const Instance> instances() const;  // Exists
  const std::string& eigenvariable() const;     // Forall
  const ExpansionTree& child() const;           // Forall

  bool isQuantifier() const { return kind() == TreeKind::Exists || kind() == TreeKind::Forall; }
  bool sameNode(const ExpansionTree& other) const { return node_ == other.node_; }

  friend bool operator==(const ExpansionTree& a, const ExpansionTree& b);

 private:
  struct Node;
  explicit ExpansionTree(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Instance {
  Term term;
  ExpansionTree child;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.term == b.term && a.child == b.child;
  }
};

struct ExpansionTree::Node {
  TreeKind kind;
  Formula shallow;
  std::string name;  // binder
  std::string eigenvariable;
  std::vector<ExpansionTree> children;  // And/Or: two, Forall: one
  std::vector<Instance> instances;
};

inline TreeKind ExpansionTree::kind() const { return node_->kind; }
inline const Formula& ExpansionTree::shallow() const { return node_->shallow; }
inline const Formula& ExpansionTree::literal() const { return node_->shallow; }
inline const ExpansionTree& ExpansionTree::left() const { return node_->children[0]; }
inline const ExpansionTree& ExpansionTree::right() const { return node_->children[1]; }
inline const std::string& ExpansionTree::binder() const { return node_->name; }
inline const Formula& ExpansionTree::matrix() const { return node_->shallow.body(); }
inline std::span<const Instance> ExpansionTree::instances() const { return node_->instances; }
inline const std::string& ExpansionTree::eigenvariable() const { return node_->eigenvariable; }
inline const ExpansionTree& ExpansionTree::child() const { return node_->children[0]; }

// Ordered pair; the positive tree (top connective or, ex, or positive literal) comes first.
struct Cut {
  ExpansionTree positive;
  ExpansionTree negative;

  // Orders the two trees by polarity and checks duality; throws ShapeError.
  static Cut make(ExpansionTree a, ExpansionTree b);

  const Formula& cutFormula() const { return positive.shallow(); }

  friend bool operator==(const Cut& a, const Cut& b) {
    return a.positive == b.positive && a.negative == b.negative;
  }
};

struct ExpansionProof {
  std::vector<Cut> cuts;
  std::vector<ExpansionTree> trees;

  bool cutFree() const { return cuts.empty(); }
};

Formula cutFormula(const Cut& c);
std::vector<Formula> shallowSequent(const ExpansionProof& p);

Formula deep(const ExpansionTree& e);
Formula deepCut(const Cut& c);
// Deep formulas of the trees followed by those of the cuts.
std::vector<Formula> deepSequent(const ExpansionProof& p);

// A branch element is a formula or one of the markers 1, 2.
struct BranchElement {
  std::optional<Formula> formula;
  int marker = 0;

  static BranchElement of(Formula f) { return {std::move(f), 0}; }
  static BranchElement of(int m) { return {std::nullopt, m}; }

  friend bool operator==(const BranchElement& a, const BranchElement& b) {
    return a.marker == b.marker && a.formula == b.formula;
  }
};
using Branch = std::vector<BranchElement>;

// One branch per leaf, in left-to-right order.
std::vector<Branch> branches(const ExpansionTree& e);
std::vector<Branch> branchesCut(const Cut& c);
std::vector<Branch> branchesProof(const ExpansionProof& p);

std::size_t leafCount(const ExpansionTree& e);
std::size_t nodeCount(const ExpansionTree& e);
std::size_t nodeCount(const ExpansionProof& p);

// The weakening coercion; fresh eigenvariables are drawn from `names`.
ExpansionTree coerceWeakening(const Formula& a, FreshNames& names);

// Throws NotPermitted if an eigenvariable is sent to a non-variable term,
// CaptureError if a matrix would capture.
ExpansionTree applySubstitution(const ExpansionTree& e, const Substitution& sigma);
Cut applySubstitution(const Cut& c, const Substitution& sigma);
ExpansionProof applySubstitution(const ExpansionProof& p, const Substitution& sigma);

void collectEigenvariables(const ExpansionTree& e, std::set<std::string>& out);
std::set<std::string> eigenvariables(const ExpansionProof& p);
// All names occurring anywhere in the proof (for freshness).
void collectNames(const ExpansionTree& e, std::set<std::string>& out);
std::set<std::string> collectNames(const ExpansionProof& p);

// Deep structural equality.
bool structurallyEqual(const ExpansionProof& a, const ExpansionProof& b);

}  // namespace expcut

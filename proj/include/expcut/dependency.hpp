#pragma once

// The dependency relation between expansion and cut occurrences.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "expcut/expansion.hpp"

namespace expcut {

// Position of an occurrence. For an expansion, `steps` leads to its child, so the
// last step is the instance index (0 for a universal node). A cut occurrence has
// side -1 and no steps.
struct NodePath {
  enum class Element { Tree, Cut };
  Element element = Element::Tree;
  std::size_t index = 0;
  int side = 0;  // cuts: 0 positive, 1 negative, -1 the cut itself
  std::vector<std::size_t> steps;

  friend bool operator==(const NodePath&, const NodePath&) = default;
  friend auto operator<=>(const NodePath&, const NodePath&) = default;
};

std::string printPath(const NodePath& p);

// Subtree reached by a path; the path must name an expansion (or be a prefix).
const ExpansionTree& resolve(const ExpansionProof& p, const NodePath& path);

struct DepNode {
  enum class Kind { Exists, Forall, Cut };
  Kind kind = Kind::Cut;
  NodePath path;
  std::optional<Term> term;     // Exists
  std::string eigenvariable;    // Forall
  std::size_t cutIndex = 0;     // Cut (also set for expansions inside cuts)
  bool inCut = false;
  bool topLevel = false;        // expansion at the root of a tree
};

class DependencyGraph {
 public:
  explicit DependencyGraph(const ExpansionProof& p);

  std::size_t size() const { return nodes_.size(); }
  const DepNode& node(std::size_t i) const { return nodes_[i]; }
  const std::vector<DepNode>& nodes() const { return nodes_; }
  std::vector<std::size_t> successors(std::size_t i) const;
  std::size_t inDegree(std::size_t i) const;
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  std::size_t edgeCount() const;

  std::optional<std::size_t> cutNode(std::size_t cutIndex) const;
  // Everything strictly above `from` in the transitive closure.
  std::vector<bool> reachableFrom(std::size_t from) const;
  std::vector<bool> reachableFrom(const std::vector<std::size_t>& sources) const;
  // Nodes with a nonempty path into one of `targets`.
  std::vector<bool> reaching(const std::vector<std::size_t>& targets) const;
  // One cycle as a node sequence, if any.
  std::optional<std::vector<std::size_t>> findCycle() const;

  std::string label(std::size_t i) const;
  std::string toDot() const;

 private:
  std::vector<DepNode> nodes_;
  // indices from hubFirst_ on are internal per-eigenvariable hubs
  std::vector<std::vector<std::size_t>> succ_;
  std::vector<std::vector<std::size_t>> pred_;
  std::size_t hubFirst_ = 0;
  std::vector<std::size_t> cutNodes_;
};

inline DependencyGraph dependencyGraph(const ExpansionProof& p) { return DependencyGraph(p); }

}  // namespace expcut

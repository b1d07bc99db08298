#include "expcut/dependency.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "expcut/errors.hpp"
#include "expcut/syntax.hpp"

namespace expcut {

std::string printPath(const NodePath& p) {
  std::string out = p.element == NodePath::Element::Tree ? "tree" : "cut";
  out += std::to_string(p.index);
  if (p.side >= 0 && p.element == NodePath::Element::Cut) out += p.side == 0 ? "+" : "-";
  for (auto s : p.steps) out += "/" + std::to_string(s);
  return out;
}

const ExpansionTree& resolve(const ExpansionProof& p, const NodePath& path) {
  const ExpansionTree* e = nullptr;
  if (path.element == NodePath::Element::Tree) {
    e = &p.trees.at(path.index);
  } else {
    const Cut& c = p.cuts.at(path.index);
    e = path.side == 1 ? &c.negative : &c.positive;
  }
  for (auto s : path.steps) {
    switch (e->kind()) {
      case TreeKind::Leaf:
        throw InvalidInput("path descends below a leaf: " + printPath(path));
      case TreeKind::And:
      case TreeKind::Or:
        e = s == 0 ? &e->left() : &e->right();
        break;
      case TreeKind::Exists:
        e = &e->instances()[s].child;
        break;
      case TreeKind::Forall:
        e = &e->child();
        break;
    }
  }
  return *e;
}

namespace {

struct Builder {
  std::vector<DepNode>& nodes;
  std::vector<std::vector<std::size_t>>& succ;
  std::vector<std::size_t> dominators;

  std::size_t add(DepNode n) {
    nodes.push_back(std::move(n));
    succ.emplace_back();
    return nodes.size() - 1;
  }

  void walk(const ExpansionTree& e, NodePath& path, std::optional<std::size_t> cut) {
    switch (e.kind()) {
      case TreeKind::Leaf:
        return;
      case TreeKind::And:
      case TreeKind::Or:
        for (std::size_t i = 0; i < 2; ++i) {
          path.steps.push_back(i);
          walk(i == 0 ? e.left() : e.right(), path, cut);
          path.steps.pop_back();
        }
        return;
      case TreeKind::Exists:
      case TreeKind::Forall: {
        bool ex = e.kind() == TreeKind::Exists;
        std::size_t n = ex ? e.instances().size() : 1;
        for (std::size_t i = 0; i < n; ++i) {
          path.steps.push_back(i);
          DepNode d;
          d.kind = ex ? DepNode::Kind::Exists : DepNode::Kind::Forall;
          d.path = path;
          if (ex) {
            d.term = e.instances()[i].term;
          } else {
            d.eigenvariable = e.eigenvariable();
          }
          d.inCut = cut.has_value();
          d.cutIndex = cut ? nodes[*cut].cutIndex : 0;
          d.topLevel = !cut && path.steps.size() == 1;
          std::size_t id = add(std::move(d));
          for (auto dom : dominators) succ[dom].push_back(id);  // dominance
          if (cut) succ[*cut].push_back(id);                     // expansion of a cut
          dominators.push_back(id);
          walk(ex ? e.instances()[i].child : e.child(), path, cut);
          dominators.pop_back();
          path.steps.pop_back();
        }
        return;
      }
    }
  }
};

}  // namespace

DependencyGraph::DependencyGraph(const ExpansionProof& p) {
  Builder b{nodes_, succ_, {}};
  for (std::size_t i = 0; i < p.cuts.size(); ++i) {
    DepNode c;
    c.kind = DepNode::Kind::Cut;
    c.path = NodePath{NodePath::Element::Cut, i, -1, {}};
    c.cutIndex = i;
    std::size_t id = b.add(std::move(c));
    cutNodes_.push_back(id);
    for (int side = 0; side < 2; ++side) {
      NodePath path{NodePath::Element::Cut, i, side, {}};
      b.walk(side == 0 ? p.cuts[i].positive : p.cuts[i].negative, path, id);
    }
  }
  for (std::size_t i = 0; i < p.trees.size(); ++i) {
    NodePath path{NodePath::Element::Tree, i, 0, {}};
    b.walk(p.trees[i], path, std::nullopt);
  }

  for (auto& l : succ_) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }

  // Edges from eigenvariables go through one hub per variable; with many copies of
  // the same universal the direct edges would be quadratic.
  std::map<std::string, std::size_t> hubOf;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].kind != DepNode::Kind::Forall) continue;
    auto [it, fresh] = hubOf.emplace(nodes_[i].eigenvariable, nodes_.size() + hubOf.size());
    if (fresh) succ_.emplace_back();
    succ_[i].push_back(it->second);
  }
  hubFirst_ = nodes_.size();
  if (!hubOf.empty()) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      std::set<std::string> vars;
      if (nodes_[i].kind == DepNode::Kind::Exists) {
        vars = freeVariables(*nodes_[i].term);
      } else if (nodes_[i].kind == DepNode::Kind::Cut) {
        vars = freeVariables(p.cuts[nodes_[i].cutIndex].positive.shallow());
      } else {
        continue;
      }
      for (const auto& v : vars) {
        auto it = hubOf.find(v);
        if (it != hubOf.end()) succ_[it->second].push_back(i);
      }
    }
  }
  pred_.assign(succ_.size(), {});
  for (std::size_t i = 0; i < succ_.size(); ++i) {
    for (auto j : succ_[i]) pred_[j].push_back(i);
  }
}

std::vector<std::size_t> DependencyGraph::successors(std::size_t i) const {
  std::vector<std::size_t> out;
  for (auto j : succ_[i]) {
    if (j < hubFirst_) {
      out.push_back(j);
    } else {
      out.insert(out.end(), succ_[j].begin(), succ_[j].end());
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t DependencyGraph::inDegree(std::size_t i) const {
  std::vector<std::size_t> from;
  for (auto j : pred_[i]) {
    if (j < hubFirst_) {
      from.push_back(j);
    } else {
      from.insert(from.end(), pred_[j].begin(), pred_[j].end());
    }
  }
  std::sort(from.begin(), from.end());
  return static_cast<std::size_t>(std::unique(from.begin(), from.end()) - from.begin());
}

std::vector<std::pair<std::size_t, std::size_t>> DependencyGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < hubFirst_; ++i) {
    for (auto j : successors(i)) out.emplace_back(i, j);
  }
  return out;
}

std::size_t DependencyGraph::edgeCount() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < hubFirst_; ++i) n += successors(i).size();
  return n;
}

std::optional<std::size_t> DependencyGraph::cutNode(std::size_t cutIndex) const {
  if (cutIndex < cutNodes_.size()) return cutNodes_[cutIndex];
  return std::nullopt;
}

std::vector<bool> DependencyGraph::reachableFrom(std::size_t from) const {
  return reachableFrom(std::vector<std::size_t>{from});
}

std::vector<bool> DependencyGraph::reaching(const std::vector<std::size_t>& targets) const {
  const auto& pred = pred_;
  std::vector<bool> seen(succ_.size(), false);
  std::vector<std::size_t> stack;
  for (auto t : targets) stack.insert(stack.end(), pred[t].begin(), pred[t].end());
  while (!stack.empty()) {
    auto n = stack.back();
    stack.pop_back();
    if (seen[n]) continue;
    seen[n] = true;
    for (auto m : pred[n]) {
      if (!seen[m]) stack.push_back(m);
    }
  }
  seen.resize(hubFirst_);
  return seen;
}

std::vector<bool> DependencyGraph::reachableFrom(const std::vector<std::size_t>& sources) const {
  std::vector<bool> seen(succ_.size(), false);
  std::vector<std::size_t> stack;
  for (auto s : sources) stack.insert(stack.end(), succ_[s].begin(), succ_[s].end());
  while (!stack.empty()) {
    auto n = stack.back();
    stack.pop_back();
    if (seen[n]) continue;
    seen[n] = true;
    for (auto m : succ_[n]) {
      if (!seen[m]) stack.push_back(m);
    }
  }
  seen.resize(hubFirst_);
  return seen;
}

std::optional<std::vector<std::size_t>> DependencyGraph::findCycle() const {
  // 0 white, 1 on stack, 2 done
  std::vector<int> color(succ_.size(), 0);
  std::vector<std::pair<std::size_t, std::size_t>> stack;  // node, next successor slot
  for (std::size_t root = 0; root < succ_.size(); ++root) {
    if (color[root]) continue;
    stack.emplace_back(root, 0);
    color[root] = 1;
    while (!stack.empty()) {
      auto& [n, k] = stack.back();
      if (k == succ_[n].size()) {
        color[n] = 2;
        stack.pop_back();
        continue;
      }
      std::size_t m = succ_[n][k++];
      if (color[m] == 1) {
        std::vector<std::size_t> cycle;
        auto it = std::find_if(stack.begin(), stack.end(), [&](const auto& fr) { return fr.first == m; });
        for (; it != stack.end(); ++it) {
          if (it->first < hubFirst_) cycle.push_back(it->first);
        }
        return cycle;
      }
      if (color[m] == 0) {
        color[m] = 1;
        stack.emplace_back(m, 0);
      }
    }
  }
  return std::nullopt;
}

std::string DependencyGraph::label(std::size_t i) const {
  const auto& n = nodes_[i];
  switch (n.kind) {
    case DepNode::Kind::Exists:
      return "∃" + printTerm(*n.term);
    case DepNode::Kind::Forall:
      return "∀" + n.eigenvariable;
    case DepNode::Kind::Cut:
      return "cut#" + std::to_string(n.cutIndex);
  }
  return "?";
}

std::string DependencyGraph::toDot() const {
  std::string out = "digraph dependency {\n";
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    out += "  n" + std::to_string(i) + " [label=\"" + label(i) + "\" tooltip=\"" +
           printPath(nodes_[i].path) + "\"];\n";
  }
  for (std::size_t i = 0; i < hubFirst_; ++i) {
    for (auto j : successors(i)) {
      out += "  n" + std::to_string(i) + " -> n" + std::to_string(j) + " [style=solid];\n";
    }
  }
  return out + "}\n";
}

}  // namespace expcut

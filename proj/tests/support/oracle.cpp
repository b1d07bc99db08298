#include "oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "expcut/syntax.hpp"

namespace oracle {

using expcut::Formula;
using expcut::FormulaKind;

namespace {

void atomsOf(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::PosAtom:
      out.insert(expcut::printFormula(f));
      break;
    case FormulaKind::NegAtom:
      out.insert(expcut::printFormula(expcut::dual(f)));
      break;
    case FormulaKind::And:
    case FormulaKind::Or:
      atomsOf(f.left(), out);
      atomsOf(f.right(), out);
      break;
    default:
      throw std::logic_error("quantifier in a propositional sequent");
  }
}

bool eval(const Formula& f, const std::map<std::string, bool>& v) {
  switch (f.kind()) {
    case FormulaKind::PosAtom:
    case FormulaKind::NegAtom: {
      std::string key = expcut::printFormula(f.kind() == FormulaKind::PosAtom ? f : expcut::dual(f));
      bool b = key == "true" ? true : key == "false" ? false : v.at(key);
      return f.kind() == FormulaKind::PosAtom ? b : !b;
    }
    case FormulaKind::And:
      return eval(f.left(), v) && eval(f.right(), v);
    case FormulaKind::Or:
      return eval(f.left(), v) || eval(f.right(), v);
    default:
      throw std::logic_error("quantifier in a propositional sequent");
  }
}

}  // namespace

std::optional<std::vector<std::pair<std::string, bool>>> truthTableCounterexample(
    const std::vector<Formula>& sequent) {
  std::set<std::string> atomSet;
  for (const auto& f : sequent) atomsOf(f, atomSet);
  atomSet.erase("true");
  atomSet.erase("false");
  std::vector<std::string> atoms(atomSet.begin(), atomSet.end());
  if (atoms.size() > 20) throw std::logic_error("too many atoms for a truth table");
  for (unsigned long mask = 0; mask < (1UL << atoms.size()); ++mask) {
    std::map<std::string, bool> v;
    for (std::size_t i = 0; i < atoms.size(); ++i) v[atoms[i]] = (mask >> i) & 1;
    bool some = false;
    for (const auto& f : sequent) {
      if (eval(f, v)) {
        some = true;
        break;
      }
    }
    if (!some) return std::vector<std::pair<std::string, bool>>(v.begin(), v.end());
  }
  return std::nullopt;
}

std::size_t connectiveCount(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::PosAtom:
    case FormulaKind::NegAtom:
      return 0;
    case FormulaKind::And:
    case FormulaKind::Or:
      return 1 + connectiveCount(f.left()) + connectiveCount(f.right());
    default:
      return 1 + connectiveCount(f.body());
  }
}

std::vector<std::string> sortedLines(const expcut::ExpansionProof& p) {
  std::vector<std::string> out;
  for (const auto& c : p.cuts) out.push_back("cut " + expcut::printCut(c));
  for (const auto& t : p.trees) out.push_back("tree " + expcut::printTree(t));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Replace identifiers in `names` by v0, v1, ... in order of first appearance.
std::string canonicalNames(const std::string& text, const std::set<std::string>& names) {
  std::map<std::string, std::string> ren;
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isalpha(static_cast<unsigned char>(text[i]))) {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      std::string id = text.substr(i, j - i);
      if (names.count(id)) {
        auto [it, fresh] = ren.emplace(id, "v" + std::to_string(ren.size()));
        out += it->second;
      } else {
        out += id;
      }
      i = j;
    } else {
      out += text[i++];
    }
  }
  return out;
}

}  // namespace

bool equalModuloRenaming(const expcut::ExpansionProof& a, const expcut::ExpansionProof& b) {
  auto la = sortedLines(a), lb = sortedLines(b);
  if (la.size() != lb.size()) return false;
  auto ea = expcut::eigenvariables(a), eb = expcut::eigenvariables(b);
  if (ea.size() != eb.size()) return false;
  std::string ja, jb;
  for (const auto& l : la) ja += l + "\n";
  for (const auto& l : lb) jb += l + "\n";
  // orderings of the sorted lines may change under renaming; canonicalize then re-sort
  auto norm = [](const std::string& joined, const std::set<std::string>& names) {
    std::string c = canonicalNames(joined, names);
    std::vector<std::string> lines;
    std::size_t s = 0;
    while (s < c.size()) {
      auto e = c.find('\n', s);
      lines.push_back(c.substr(s, e - s));
      s = e + 1;
    }
    std::sort(lines.begin(), lines.end());
    return lines;
  };
  return norm(ja, ea) == norm(jb, eb);
}

}  // namespace oracle

#include "expcut/tautology.hpp"

#include <unordered_map>
#include <vector>

#include "expcut/errors.hpp"
#include "expcut/syntax.hpp"

namespace expcut {

std::string atomKey(const Formula& literal) {
  return printFormula(literal.kind() == FormulaKind::NegAtom ? dual(literal) : literal);
}

bool evaluate(const Formula& f, const Valuation& v) {
  switch (f.kind()) {
    case FormulaKind::PosAtom:
    case FormulaKind::NegAtom: {
      bool value;
      if (f.predicate() == kTrueAtom && f.arguments().empty()) {
        value = true;
      } else if (f.predicate() == kFalseAtom && f.arguments().empty()) {
        value = false;
      } else {
        auto it = v.find(atomKey(f));
        value = it != v.end() && it->second;
      }
      return f.kind() == FormulaKind::PosAtom ? value : !value;
    }
    case FormulaKind::And:
      return evaluate(f.left(), v) && evaluate(f.right(), v);
    case FormulaKind::Or:
      return evaluate(f.left(), v) || evaluate(f.right(), v);
    default:
      throw InvalidInput("evaluate: quantified formula " + printFormula(f));
  }
}

namespace {

// Literals are +v / -v with variables from 1.
using Clause = std::vector<int>;

class Encoder {
 public:
  explicit Encoder(std::size_t atomLimit) : atomLimit_(atomLimit) {
    trueVar_ = fresh();
    clauses.push_back({trueVar_});
  }

  // Plaisted-Greenbaum: a variable implying f (positive polarity only).
  int encode(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::PosAtom:
      case FormulaKind::NegAtom: {
        int v = atomVar(f);
        return f.kind() == FormulaKind::PosAtom ? v : -v;
      }
      case FormulaKind::And: {
        int l = encode(f.left());
        int r = encode(f.right());
        int g = fresh();
        clauses.push_back({-g, l});
        clauses.push_back({-g, r});
        return g;
      }
      case FormulaKind::Or: {
        int l = encode(f.left());
        int r = encode(f.right());
        int g = fresh();
        clauses.push_back({-g, l, r});
        return g;
      }
      default:
        throw InvalidInput("sequent member is not quantifier-free: " + printFormula(f));
    }
  }

  int variables() const { return next_ - 1; }

  std::vector<Clause> clauses;
  std::vector<std::pair<std::string, int>> atoms;

 private:
  int fresh() { return next_++; }

  int atomVar(const Formula& f) {
    if (f.arguments().empty() && f.predicate() == kTrueAtom) return trueVar_;
    if (f.arguments().empty() && f.predicate() == kFalseAtom) return -trueVar_;
    std::string key = atomKey(f);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    if (index_.size() >= atomLimit_) {
      throw ResourceLimit("sequent has more than " + std::to_string(atomLimit_) + " distinct atoms");
    }
    int v = fresh();
    index_.emplace(key, v);
    atoms.emplace_back(key, v);
    return v;
  }

  std::size_t atomLimit_;
  int next_ = 1;
  int trueVar_ = 0;
  std::unordered_map<std::string, int> index_;
};

// Plain DPLL with unit propagation over occurrence lists.
class Solver {
 public:
  Solver(int nvars, std::vector<Clause> clauses)
      : clauses_(std::move(clauses)), value_(static_cast<std::size_t>(nvars) + 1, 0) {}

  bool solve() { return search(); }

  int value(int v) const { return value_[static_cast<std::size_t>(v)]; }

 private:
  int litValue(int lit) const {
    int v = value_[static_cast<std::size_t>(std::abs(lit))];
    return lit > 0 ? v : -v;
  }

  void assign(int lit) {
    value_[static_cast<std::size_t>(std::abs(lit))] = lit > 0 ? 1 : -1;
    trail_.push_back(std::abs(lit));
  }

  void undoTo(std::size_t mark) {
    while (trail_.size() > mark) {
      value_[static_cast<std::size_t>(trail_.back())] = 0;
      trail_.pop_back();
    }
  }

  // false on conflict
  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& c : clauses_) {
        int unassigned = 0, last = 0;
        bool sat = false;
        for (int lit : c) {
          int v = litValue(lit);
          if (v > 0) {
            sat = true;
            break;
          }
          if (v == 0) {
            ++unassigned;
            last = lit;
          }
        }
        if (sat) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          assign(last);
          changed = true;
        }
      }
    }
    return true;
  }

  int pickBranch() const {
    for (const auto& c : clauses_) {
      bool sat = false;
      int cand = 0;
      for (int lit : c) {
        int v = litValue(lit);
        if (v > 0) {
          sat = true;
          break;
        }
        if (v == 0 && cand == 0) cand = lit;
      }
      if (!sat && cand != 0) return cand;
    }
    return 0;
  }

  bool search() {
    std::size_t mark = trail_.size();
    if (!propagate()) {
      undoTo(mark);
      return false;
    }
    int lit = pickBranch();
    if (lit == 0) return true;
    for (int choice : {lit, -lit}) {
      std::size_t inner = trail_.size();
      assign(choice);
      if (search()) return true;
      undoTo(inner);
    }
    undoTo(mark);
    return false;
  }

  std::vector<Clause> clauses_;
  std::vector<int> value_;
  std::vector<int> trail_;
};

}  // namespace

TautologyResult isTautology(std::span<const Formula> sequent, const TautologyOptions& options) {
  // The sequent is valid iff the conjunction of the duals is unsatisfiable.
  Encoder enc(options.atomLimit);
  for (const auto& f : sequent) {
    int g = enc.encode(dual(f));
    enc.clauses.push_back({g});
  }
  Solver solver(enc.variables(), enc.clauses);
  TautologyResult result;
  if (!solver.solve()) {
    result.valid = true;
    return result;
  }
  Valuation v;
  for (const auto& [key, var] : enc.atoms) v[key] = solver.value(var) > 0;
  for (const auto& f : sequent) {
    if (evaluate(f, v)) throw Error("internal: countermodel does not falsify " + printFormula(f));
  }
  result.countermodel = std::move(v);
  return result;
}

std::string printValuation(const Valuation& v) {
  std::string out;
  for (const auto& [k, b] : v) {
    if (!out.empty()) out += ", ";
    out += k + (b ? " = true" : " = false");
  }
  return out.empty() ? "(no atoms)" : out;
}

}  // namespace expcut

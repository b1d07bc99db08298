#pragma once

// Cut reduction on expansion proofs and the weak normalization driver.

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "expcut/check.hpp"
#include "expcut/expansion.hpp"
#include "expcut/logic.hpp"

namespace expcut {

std::size_t rank(const Cut& c);

// Cuts grouped by alpha-equivalent cut formula. Sorted by printed class formula.
struct CutClass {
  Formula classFormula;
  std::vector<std::size_t> members;  // ascending cut indices
  std::size_t rank = 0;
};

std::vector<CutClass> cutClasses(const ExpansionProof& p);

struct Measure {
  std::size_t r = 0;
  std::size_t k = 0;
  friend auto operator<=>(const Measure&, const Measure&) = default;
};

// Requires at least one cut.
Measure measure(const ExpansionProof& p);

// Throws NoMaximalClass.
CutClass findMaximalClass(const ExpansionProof& p);

enum class StepKind { Quantifier, Propositional, Atomic };

struct ReductionStep {
  StepKind kind = StepKind::Atomic;
  std::string classFormula;
  std::vector<Term> terms;                 // Quantifier: t_1..t_l
  std::vector<std::string> eigenvariables;  // Quantifier: alpha_1..alpha_q
  std::vector<std::string> renamed;        // Quantifier: R
  std::optional<std::size_t> cutIndex;     // Atomic
  std::string before;                      // canonical print
  std::string after;
};

// Session state for one normalization: the fresh name supply.
class ReductionContext {
 public:
  explicit ReductionContext(const ExpansionProof& p);
  FreshNames& names() { return names_; }

 private:
  FreshNames names_;
};

ExpansionProof reduceQuantifier(const ExpansionProof& p, const CutClass& c, ReductionContext& ctx,
                                ReductionStep* record = nullptr);
ExpansionProof reducePropositional(const ExpansionProof& p, const CutClass& c, ReductionStep* record = nullptr);
ExpansionProof reduceAtomic(const ExpansionProof& p, std::size_t cutIndex, ReductionStep* record = nullptr);

// Contracts top-level cuts and trees that print identically.
ExpansionProof dedup(const ExpansionProof& p);

struct Strategy {
  enum class Kind { Maximal, Select, Class };
  Kind kind = Kind::Maximal;
  // Select: index into the class list
  std::function<std::size_t(const ExpansionProof&, const std::vector<CutClass>&)> select;
  // Class: preferred class formula; falls back to maximal when absent
  std::optional<Formula> classFormula;

  static Strategy maximal() { return {}; }
  static Strategy selecting(std::function<std::size_t(const ExpansionProof&, const std::vector<CutClass>&)> f) {
    Strategy s;
    s.kind = Kind::Select;
    s.select = std::move(f);
    return s;
  }
  static Strategy preferClass(Formula f) {
    Strategy s;
    s.kind = Kind::Class;
    s.classFormula = std::move(f);
    return s;
  }
};

struct NormalizeOptions {
  bool verifyEachStep = false;
  bool dedup = false;
  std::size_t maxSteps = 10000;  // macro steps
  bool checkInput = true;
  // canonical before/after prints in every recorded step; costly on large proofs
  bool snapshots = false;
  CheckOptions check;
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;
  std::vector<Measure> measures;  // before each macro step
  std::size_t macroSteps = 0;
  ExpansionProof finalProof;
};

// Reduces one whole class, dispatching on the shape of the class formula.
ExpansionProof reduceClass(const ExpansionProof& p, const CutClass& c, ReductionContext& ctx,
                           std::vector<ReductionStep>* records = nullptr, bool snapshots = true);

ReductionTrace normalize(const ExpansionProof& p, const Strategy& strategy = Strategy::maximal(),
                         const NormalizeOptions& options = {});

std::string traceToJson(const ReductionTrace& trace);

const char* stepKindName(StepKind k);

}  // namespace expcut

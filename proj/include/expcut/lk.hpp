#pragma once

// Sequent calculus LK, the translation Exp(.) and sequentialization.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "expcut/check.hpp"
#include "expcut/expansion.hpp"
#include "expcut/logic.hpp"

namespace expcut {

enum class LKRule { Init, Forall, Exists, And, Or, Cut };

struct LKProof {
  LKRule rule = LKRule::Init;
  std::vector<Formula> conclusion;
  // Init: the distinguished atom. Cut: the cut formula, proved by the first premise.
  std::optional<Formula> formula;
  std::string eigenvariable;  // Forall
  std::optional<Term> witness;  // Exists
  std::vector<LKProof> premises;
};

enum class SequentSemantics { Multiset, Set };

struct LKReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

LKReport checkLK(const LKProof& pi, bool requireRegular,
                 SequentSemantics semantics = SequentSemantics::Multiset);

// How the premises of one inference sit inside its conclusion.
// contextOf[i][j] is the conclusion index that premise i position j copies, or -1
// for an active formula. active[i] lists the active positions of premise i in
// rule order (Or: A then B).
struct InferenceMatch {
  int principal = -1;
  std::vector<std::vector<int>> contextOf;
  std::vector<std::vector<std::size_t>> active;
};

// nullopt when the node does not fit its rule schema; `why` receives the reason.
std::optional<InferenceMatch> matchInference(const LKProof& node, SequentSemantics semantics,
                                             std::string* why = nullptr);

std::size_t cutCount(const LKProof& pi);
std::size_t inferenceCount(const LKProof& pi);
std::size_t depth(const LKProof& pi);

// Exp(pi). Trees follow the order of the end-sequent. Throws NotRegular.
ExpansionProof expand(const LKProof& pi);

struct LKESnapshot {
  std::string rule;
  ExpansionProof line;
  std::vector<Formula> weakened;
};

struct SequentializeOptions {
  bool checkInput = true;
  bool debugChecks = false;  // re-check acyclicity of every intermediate line
  CheckOptions check;
  std::vector<LKESnapshot>* trace = nullptr;
};

// Throws InvalidInput when the proof fails checkProof, Stuck on an internal breach.
LKProof sequentialize(const ExpansionProof& p, const SequentializeOptions& options = {});

std::string printLKETrace(const std::vector<LKESnapshot>& trace);

}  // namespace expcut

#pragma once

// The four correctness conditions of an expansion proof.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "expcut/expansion.hpp"
#include "expcut/tautology.hpp"

namespace expcut {

struct CheckOptions {
  std::size_t atomLimit = 64;
};

struct ConditionReport {
  bool ok = true;
  std::vector<std::string> messages;
};

struct WeakRegularityReport : ConditionReport {
  // Offending branch pairs, printed.
  std::vector<std::pair<std::string, std::string>> violations;
};

struct AcyclicityReport : ConditionReport {
  std::vector<std::string> cycle;  // node labels
};

struct ValidityReport : ConditionReport {
  std::optional<Valuation> countermodel;
};

struct ProofReport {
  WeakRegularityReport weakRegularity;
  AcyclicityReport acyclicity;
  ValidityReport validity;
  ConditionReport eigenvariables;

  bool ok() const { return weakRegularity.ok && acyclicity.ok && validity.ok && eigenvariables.ok; }
  // One line per condition, details indented below failures.
  std::string format() const;
};

WeakRegularityReport checkWeakRegularity(const ExpansionProof& p);
AcyclicityReport checkAcyclicity(const ExpansionProof& p);
ValidityReport checkValidity(const ExpansionProof& p, const CheckOptions& options = {});
ConditionReport checkEigenvariableCondition(const ExpansionProof& p);
ProofReport checkProof(const ExpansionProof& p, const CheckOptions& options = {});

}  // namespace expcut

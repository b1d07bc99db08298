#pragma once

// Text formats for terms, formulas, expansion proofs and LK proofs.

#include <string>
#include <string_view>

#include "expcut/expansion.hpp"
#include "expcut/lk.hpp"
#include "expcut/logic.hpp"

namespace expcut {

Term parseTerm(std::string_view text);
Formula parseFormula(std::string_view text);
ExpansionTree parseExpansionTree(std::string_view text);
ExpansionProof parseExpansionProof(std::string_view text);
LKProof parseLKProof(std::string_view text);

std::string printTerm(const Term& t);
std::string printFormula(const Formula& f);
std::string printTree(const ExpansionTree& e);
std::string printCut(const Cut& c);
std::string printBranch(const Branch& b);
std::string printSequent(const std::vector<Formula>& s);
// One "cut POS NEG" or "tree E" line per element, in stored order.
std::string printExpansionProof(const ExpansionProof& p);
// Same lines, cuts sorted then trees sorted: equal iff equal modulo permutation.
std::string canonicalPrint(const ExpansionProof& p);
std::string printLKProof(const LKProof& pi);

// printFormula of the alpha-canonical form; a key for alpha-equality.
std::string formulaKey(const Formula& f);

bool equalModuloPermutation(const ExpansionProof& a, const ExpansionProof& b);

}  // namespace expcut

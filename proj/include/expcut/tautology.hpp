#pragma once

// Validity of quantifier-free sequents.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "expcut/logic.hpp"

namespace expcut {

// Atom key (printed positive atom) to truth value; "true"/"false" are never keys.
using Valuation = std::map<std::string, bool>;

struct TautologyOptions {
  std::size_t atomLimit = 64;
};

struct TautologyResult {
  bool valid = false;
  std::optional<Valuation> countermodel;
};

std::string atomKey(const Formula& literal);

// Unlisted atoms are false.
bool evaluate(const Formula& f, const Valuation& v);

// Throws ResourceLimit when the sequent has more distinct atoms than allowed,
// InvalidInput when a member has a quantifier.
TautologyResult isTautology(std::span<const Formula> sequent, const TautologyOptions& options = {});

std::string printValuation(const Valuation& v);

}  // namespace expcut

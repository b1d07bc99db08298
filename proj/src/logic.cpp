#include "expcut/logic.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "expcut/errors.hpp"

namespace expcut {

Term Term::symbol(std::string name) {
  return Term(std::make_shared<const Node>(Node{std::move(name), {}}));
}

Term Term::apply(std::string function, std::vector<Term> arguments) {
  return Term(std::make_shared<const Node>(Node{std::move(function), std::move(arguments)}));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.name() != b.name()) return false;
  auto x = a.arguments();
  auto y = b.arguments();
  return std::equal(x.begin(), x.end(), y.begin(), y.end());
}

Formula Formula::atom(std::string predicate, std::vector<Term> arguments) {
  return literal(true, std::move(predicate), std::move(arguments));
}

Formula Formula::negatedAtom(std::string predicate, std::vector<Term> arguments) {
  return literal(false, std::move(predicate), std::move(arguments));
}

Formula Formula::literal(bool positive, std::string predicate, std::vector<Term> arguments) {
  return Formula(std::make_shared<const Node>(
      Node{positive ? FormulaKind::PosAtom : FormulaKind::NegAtom, std::move(predicate),
           std::move(arguments), {}}));
}

Formula Formula::conj(Formula left, Formula right) {
  return binary(FormulaKind::And, std::move(left), std::move(right));
}

Formula Formula::disj(Formula left, Formula right) {
  return binary(FormulaKind::Or, std::move(left), std::move(right));
}

Formula Formula::binary(FormulaKind kind, Formula left, Formula right) {
  return Formula(std::make_shared<const Node>(
      Node{kind, {}, {}, {std::move(left), std::move(right)}}));
}

Formula Formula::exists(std::string binder, Formula body) {
  return quantifier(FormulaKind::Exists, std::move(binder), std::move(body));
}

Formula Formula::forall(std::string binder, Formula body) {
  return quantifier(FormulaKind::Forall, std::move(binder), std::move(body));
}

Formula Formula::quantifier(FormulaKind kind, std::string binder, Formula body) {
  if (!occursFree(binder, body)) {
    throw InvalidInput("vacuous quantifier on '" + binder + "'");
  }
  return Formula(std::make_shared<const Node>(Node{kind, std::move(binder), {}, {std::move(body)}}));
}

bool Formula::isLiteral() const {
  return kind() == FormulaKind::PosAtom || kind() == FormulaKind::NegAtom;
}

bool Formula::isPositive() const {
  return kind() == FormulaKind::Or || kind() == FormulaKind::Exists ||
         kind() == FormulaKind::PosAtom;
}

bool Formula::isQuantifier() const {
  return kind() == FormulaKind::Exists || kind() == FormulaKind::Forall;
}

bool Formula::isBinary() const {
  return kind() == FormulaKind::And || kind() == FormulaKind::Or;
}

bool Formula::isQuantifierFree() const {
  if (isLiteral()) return true;
  if (isQuantifier()) return false;
  return left().isQuantifierFree() && right().isQuantifierFree();
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.node_->name != b.node_->name) return false;
  const auto& x = a.node_->arguments;
  const auto& y = b.node_->arguments;
  if (!std::equal(x.begin(), x.end(), y.begin(), y.end())) return false;
  return a.node_->children == b.node_->children;
}

Formula dual(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::PosAtom:
    case FormulaKind::NegAtom: {
      auto args = f.arguments();
      return Formula::literal(f.kind() == FormulaKind::NegAtom, f.predicate(),
                              std::vector<Term>(args.begin(), args.end()));
    }
    case FormulaKind::And:
      return Formula::disj(dual(f.left()), dual(f.right()));
    case FormulaKind::Or:
      return Formula::conj(dual(f.left()), dual(f.right()));
    case FormulaKind::Exists:
      return Formula::forall(f.binder(), dual(f.body()));
    case FormulaKind::Forall:
      return Formula::exists(f.binder(), dual(f.body()));
  }
  return f;
}

Term substitute(const Term& t, const Substitution& sigma) {
  if (sigma.empty()) return t;
  if (t.isSymbol()) {
    auto it = sigma.find(t.name());
    return it == sigma.end() ? t : it->second;
  }
  std::vector<Term> args;
  args.reserve(t.arguments().size());
  bool changed = false;
  for (const Term& a : t.arguments()) {
    args.push_back(substitute(a, sigma));
    changed = changed || !args.back().sameNode(a);
  }
  return changed ? Term::apply(t.name(), std::move(args)) : t;
}

namespace {

std::vector<Term> substituteAll(std::span<const Term> terms, const Substitution& sigma,
                                bool& changed) {
  std::vector<Term> out;
  out.reserve(terms.size());
  for (const Term& a : terms) {
    out.push_back(substitute(a, sigma));
    changed = changed || !out.back().sameNode(a);
  }
  return out;
}

}  // namespace

Formula substitute(const Formula& f, const Substitution& sigma) {
  if (sigma.empty()) return f;
  switch (f.kind()) {
    case FormulaKind::PosAtom:
    case FormulaKind::NegAtom: {
      bool changed = false;
      auto args = substituteAll(f.arguments(), sigma, changed);
      if (!changed) return f;
      return Formula::literal(f.kind() == FormulaKind::PosAtom, f.predicate(), std::move(args));
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
      Formula l = substitute(f.left(), sigma);
      Formula r = substitute(f.right(), sigma);
      if (l.sameNode(f.left()) && r.sameNode(f.right())) return f;
      return Formula::binary(f.kind(), std::move(l), std::move(r));
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      Substitution inner;
      for (const auto& [var, term] : sigma) {
        if (var == f.binder() || !occursFree(var, f.body())) continue;
        if (occurs(f.binder(), term)) {
          throw CaptureError("substituting for '" + var + "' would capture '" + f.binder() +
                             "'");
        }
        inner.emplace(var, term);
      }
      if (inner.empty()) return f;
      return Formula::quantifier(f.kind(), f.binder(), substitute(f.body(), inner));
    }
  }
  return f;
}

namespace {

void freeVars(const Term& t, std::set<std::string>& out) {
  if (t.isSymbol()) {
    out.insert(t.name());
    return;
  }
  for (const Term& a : t.arguments()) freeVars(a, out);
}

void freeVars(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::PosAtom:
    case FormulaKind::NegAtom: {
      std::set<std::string> here;
      for (const Term& a : f.arguments()) freeVars(a, here);
      for (const auto& s : here) {
        if (std::find(bound.begin(), bound.end(), s) == bound.end()) out.insert(s);
      }
      return;
    }
    case FormulaKind::And:
    case FormulaKind::Or:
      freeVars(f.left(), bound, out);
      freeVars(f.right(), bound, out);
      return;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      bound.push_back(f.binder());
      freeVars(f.body(), bound, out);
      bound.pop_back();
      return;
  }
}

}  // namespace

std::set<std::string> freeVariables(const Term& t) {
  std::set<std::string> out;
  freeVars(t, out);
  return out;
}

std::set<std::string> freeVariables(const Formula& f) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  freeVars(f, bound, out);
  return out;
}

bool occurs(std::string_view symbol, const Term& t) {
  if (t.isSymbol()) return t.name() == symbol;
  for (const Term& a : t.arguments()) {
    if (occurs(symbol, a)) return true;
  }
  return false;
}

bool occursFree(std::string_view symbol, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::PosAtom:
    case FormulaKind::NegAtom:
      for (const Term& a : f.arguments()) {
        if (occurs(symbol, a)) return true;
      }
      return false;
    case FormulaKind::And:
    case FormulaKind::Or:
      return occursFree(symbol, f.left()) || occursFree(symbol, f.right());
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      return f.binder() != symbol && occursFree(symbol, f.body());
  }
  return false;
}

void collectNames(const Term& t, std::set<std::string>& out) {
  out.insert(t.name());
  for (const Term& a : t.arguments()) collectNames(a, out);
}

void collectNames(const Formula& f, std::set<std::string>& out) {
  if (!f.isBinary()) out.insert(f.predicate());
  for (const Term& a : f.arguments()) collectNames(a, out);
  if (f.isBinary()) {
    collectNames(f.left(), out);
    collectNames(f.right(), out);
  } else if (f.isQuantifier()) {
    collectNames(f.body(), out);
  }
}

std::size_t complexity(const Formula& f) {
  if (f.isLiteral()) return 0;
  if (f.isQuantifier()) return 1 + complexity(f.body());
  return 1 + complexity(f.left()) + complexity(f.right());
}

namespace {

// Bound names become "%n" in preorder; '%' cannot appear in parsed identifiers.
Term canonicalTerm(const Term& t, const std::vector<std::pair<std::string, std::string>>& scope) {
  if (t.isSymbol()) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      if (it->first == t.name()) return Term::symbol(it->second);
    }
    return t;
  }
  std::vector<Term> args;
  for (const Term& a : t.arguments()) args.push_back(canonicalTerm(a, scope));
  return Term::apply(t.name(), std::move(args));
}

Formula canonical(const Formula& f, std::vector<std::pair<std::string, std::string>>& scope,
                  std::size_t& counter) {
  switch (f.kind()) {
    case FormulaKind::PosAtom:
    case FormulaKind::NegAtom: {
      if (scope.empty()) return f;
      std::vector<Term> args;
      for (const Term& a : f.arguments()) args.push_back(canonicalTerm(a, scope));
      return Formula::literal(f.kind() == FormulaKind::PosAtom, f.predicate(), std::move(args));
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
      Formula l = canonical(f.left(), scope, counter);
      Formula r = canonical(f.right(), scope, counter);
      return Formula::binary(f.kind(), std::move(l), std::move(r));
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      std::string name = "%" + std::to_string(counter++);
      scope.emplace_back(f.binder(), name);
      Formula body = canonical(f.body(), scope, counter);
      scope.pop_back();
      return Formula::quantifier(f.kind(), name, std::move(body));
    }
  }
  return f;
}

using BinderPairs = std::vector<std::pair<std::string, std::string>>;

bool alphaTerm(const Term& a, const Term& b, const BinderPairs& scope) {
  if (a.isSymbol() && b.isSymbol()) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      bool la = it->first == a.name();
      bool lb = it->second == b.name();
      if (la || lb) return la && lb;
    }
    return a.name() == b.name();
  }
  if (a.name() != b.name() || a.arguments().size() != b.arguments().size()) return false;
  for (std::size_t i = 0; i < a.arguments().size(); ++i) {
    if (!alphaTerm(a.arguments()[i], b.arguments()[i], scope)) return false;
  }
  return true;
}

bool alphaFormula(const Formula& a, const Formula& b, BinderPairs& scope) {
  if (scope.empty() && a.sameNode(b)) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case FormulaKind::PosAtom:
    case FormulaKind::NegAtom:
      if (a.predicate() != b.predicate() || a.arguments().size() != b.arguments().size()) {
        return false;
      }
      for (std::size_t i = 0; i < a.arguments().size(); ++i) {
        if (!alphaTerm(a.arguments()[i], b.arguments()[i], scope)) return false;
      }
      return true;
    case FormulaKind::And:
    case FormulaKind::Or:
      return alphaFormula(a.left(), b.left(), scope) && alphaFormula(a.right(), b.right(), scope);
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      scope.emplace_back(a.binder(), b.binder());
      bool ok = alphaFormula(a.body(), b.body(), scope);
      scope.pop_back();
      return ok;
    }
  }
  return false;
}

}  // namespace

Formula alphaCanonical(const Formula& f) {
  std::vector<std::pair<std::string, std::string>> scope;
  std::size_t counter = 0;
  return canonical(f, scope, counter);
}

bool alphaEqual(const Formula& a, const Formula& b) {
  BinderPairs scope;
  return alphaFormula(a, b, scope);
}

std::string FreshNames::fresh(std::string_view base) {
  std::string stem(base);
  auto underscore = stem.rfind('_');
  if (underscore != std::string::npos && underscore + 1 < stem.size() &&
      std::all_of(stem.begin() + static_cast<std::ptrdiff_t>(underscore) + 1, stem.end(),
                  [](unsigned char c) { return std::isdigit(c) != 0; })) {
    stem.resize(underscore);
  }
  if (stem.empty()) stem = "v";
  for (;;) {
    std::string candidate = stem + "_" + std::to_string(++counter_);
    if (used_.insert(candidate).second) return candidate;
  }
}

}  // namespace expcut

#pragma once

// First-order terms and NNF formulas.
//
// Values are immutable and share structure; copying a Term or Formula is a
// reference-count bump. Variables and constants share one namespace: a nullary
// symbol is a variable exactly when some binder, eigenvariable or substitution
// treats it as one.

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace expcut {

class Term {
 public:
  static Term symbol(std::string name);
  static Term apply(std::string function, std::vector<Term> arguments);

  const std::string& name() const;
  std::span<const Term> arguments() const;
  bool isSymbol() const { return arguments().empty(); }

  bool sameNode(const Term& other) const { return node_ == other.node_; }

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  std::string name;
  std::vector<Term> arguments;
};

inline const std::string& Term::name() const { return node_->name; }
inline std::span<const Term> Term::arguments() const { return node_->arguments; }

enum class FormulaKind { PosAtom, NegAtom, And, Or, Exists, Forall };

class Formula {
 public:
  static Formula atom(std::string predicate, std::vector<Term> arguments = {});
  static Formula negatedAtom(std::string predicate, std::vector<Term> arguments = {});
  static Formula literal(bool positive, std::string predicate, std::vector<Term> arguments);
  static Formula conj(Formula left, Formula right);
  static Formula disj(Formula left, Formula right);
  static Formula binary(FormulaKind kind, Formula left, Formula right);
  // Throws InvalidInput for a vacuous quantifier.
  static Formula exists(std::string binder, Formula body);
  static Formula forall(std::string binder, Formula body);
  static Formula quantifier(FormulaKind kind, std::string binder, Formula body);

  FormulaKind kind() const;
  // Atoms: predicate name. Quantifiers: binder name.
  const std::string& predicate() const;
  const std::string& binder() const;
  std::span<const Term> arguments() const;
  const Formula& left() const;
  const Formula& right() const;
  const Formula& body() const;

  bool isLiteral() const;
  bool isPositive() const;
  bool isQuantifier() const;
  bool isBinary() const;
  bool isQuantifierFree() const;

  bool sameNode(const Formula& other) const { return node_ == other.node_; }

  // Syntactic equality, bound names included.
  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  FormulaKind kind;
  std::string name;
  std::vector<Term> arguments;
  std::vector<Formula> children;
};

inline FormulaKind Formula::kind() const { return node_->kind; }
inline const std::string& Formula::predicate() const { return node_->name; }
inline const std::string& Formula::binder() const { return node_->name; }
inline std::span<const Term> Formula::arguments() const { return node_->arguments; }
inline const Formula& Formula::left() const { return node_->children[0]; }
inline const Formula& Formula::right() const { return node_->children[1]; }
inline const Formula& Formula::body() const { return node_->children[0]; }

inline constexpr std::string_view kTrueAtom = "true";
inline constexpr std::string_view kFalseAtom = "false";

using Substitution = std::map<std::string, Term>;

Formula dual(const Formula& f);

Term substitute(const Term& t, const Substitution& sigma);
// Simultaneous replacement of free occurrences. Throws CaptureError when a
// replacement term would fall under a binder of one of its symbols.
Formula substitute(const Formula& f, const Substitution& sigma);

// Nullary symbols occurring free.
std::set<std::string> freeVariables(const Term& t);
std::set<std::string> freeVariables(const Formula& f);
bool occurs(std::string_view symbol, const Term& t);
bool occursFree(std::string_view symbol, const Formula& f);

// Every name appearing anywhere: symbols, function and predicate names, binders.
void collectNames(const Term& t, std::set<std::string>& out);
void collectNames(const Formula& f, std::set<std::string>& out);

// Binary connectives plus quantifiers; literals count 0.
std::size_t complexity(const Formula& f);

Formula alphaCanonical(const Formula& f);
bool alphaEqual(const Formula& a, const Formula& b);

// Proof-level supply of fresh names: base name plus "_k" from one counter.
class FreshNames {
 public:
  void reserve(const std::string& name) { used_.insert(name); }
  void reserve(const std::set<std::string>& names) { used_.insert(names.begin(), names.end()); }
  bool isUsed(const std::string& name) const { return used_.count(name) != 0; }
  std::string fresh(std::string_view base);

 private:
  std::set<std::string> used_;
  std::size_t counter_ = 0;
};

}  // namespace expcut

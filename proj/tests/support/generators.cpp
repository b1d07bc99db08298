#include "generators.hpp"

#include <algorithm>

#include "expcut/syntax.hpp"

namespace gen {

using namespace expcut;

namespace {

int pick(Rng& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Formula atom(Rng& rng, const std::vector<std::string>& vars) {
  bool neg = coin(rng, 0.5);
  Formula a = Formula::atom("S", {});
  switch (pick(rng, 4)) {
    case 0:
      a = Formula::atom("P", {term(rng, vars, 1)});
      break;
    case 1:
      a = Formula::atom("Q", {term(rng, vars, 1)});
      break;
    case 2:
      a = Formula::atom("R", {term(rng, vars, 1), term(rng, vars, 1)});
      break;
    default:
      break;
  }
  return neg ? dual(a) : a;
}

Formula build(Rng& rng, std::vector<std::string> vars, std::vector<std::string> binders, int budget) {
  if (budget <= 0 || coin(rng, 0.25)) return atom(rng, vars);
  int choice = pick(rng, binders.empty() ? 2 : 4);
  if (choice < 2) {
    int left = pick(rng, budget);
    Formula l = build(rng, vars, binders, left);
    Formula r = build(rng, vars, binders, budget - 1 - left);
    return choice == 0 ? Formula::conj(l, r) : Formula::disj(l, r);
  }
  std::string b = binders[static_cast<std::size_t>(pick(rng, static_cast<int>(binders.size())))];
  binders.erase(std::find(binders.begin(), binders.end(), b));
  vars.push_back(b);
  Formula body = build(rng, vars, binders, budget - 1);
  if (!occursFree(b, body)) {
    // force the binder to occur; keeps the complexity bound by reusing the slot
    body = Formula::atom(coin(rng, 0.5) ? "P" : "Q", {Term::symbol(b)});
    if (coin(rng, 0.5)) body = dual(body);
  }
  return choice == 2 ? Formula::exists(b, body) : Formula::forall(b, body);
}

}  // namespace

Term term(Rng& rng, const std::vector<std::string>& vars, int depth) {
  int n = static_cast<int>(vars.size());
  int r = pick(rng, 3 + n + (depth > 0 ? 2 : 0));
  if (r < 3) return Term::symbol(std::string(1, static_cast<char>('a' + r)));
  if (r < 3 + n) return Term::symbol(vars[static_cast<std::size_t>(r - 3)]);
  if (r == 3 + n) return Term::apply("f", {term(rng, vars, depth - 1)});
  return Term::apply("g", {term(rng, vars, depth - 1), term(rng, vars, depth - 1)});
}

Formula formula(Rng& rng, const std::vector<std::string>& vars, int maxComplexity) {
  return build(rng, vars, {"x", "y", "z"}, maxComplexity);
}

std::vector<Formula> qfSequent(Rng& rng, int atoms) {
  std::vector<Formula> pool;
  for (int i = 0; i < atoms; ++i) pool.push_back(Formula::atom("A" + std::to_string(i), {}));
  if (coin(rng, 0.1)) pool.push_back(Formula::atom("true", {}));
  if (coin(rng, 0.1)) pool.push_back(Formula::atom("false", {}));
  auto lit = [&]() {
    Formula a = pool[static_cast<std::size_t>(pick(rng, static_cast<int>(pool.size())))];
    return coin(rng, 0.5) ? dual(a) : a;
  };
  std::function<Formula(int)> f = [&](int d) -> Formula {
    if (d == 0 || coin(rng, 0.3)) return lit();
    Formula l = f(d - 1), r = f(d - 1);
    return coin(rng, 0.5) ? Formula::conj(l, r) : Formula::disj(l, r);
  };
  std::vector<Formula> out;
  int n = pick(rng, 5);
  for (int i = 0; i < n; ++i) out.push_back(f(3));
  return out;
}

ExpansionTree tree(Rng& rng, const Formula& f, FreshNames& names) {
  switch (f.kind()) {
    case FormulaKind::PosAtom:
    case FormulaKind::NegAtom:
      return ExpansionTree::leaf(f);
    case FormulaKind::And:
    case FormulaKind::Or:
      return ExpansionTree::binary(f.kind() == FormulaKind::And ? TreeKind::And : TreeKind::Or,
                                   tree(rng, f.left(), names), tree(rng, f.right(), names));
    case FormulaKind::Exists: {
      std::vector<Instance> inst;
      int n = 1 + pick(rng, 2);
      for (int i = 0; i < n; ++i) {
        Term t = term(rng, {"u", "v"}, 1);
        inst.push_back(Instance{t, tree(rng, substitute(f.body(), Substitution{{f.binder(), t}}), names)});
      }
      return ExpansionTree::exists(f.binder(), f.body(), std::move(inst));
    }
    case FormulaKind::Forall: {
      std::string a = names.fresh("e");
      return ExpansionTree::forall(f.binder(), f.body(), a,
                                   tree(rng, substitute(f.body(), Substitution{{f.binder(), Term::symbol(a)}}), names));
    }
  }
  throw std::logic_error("bad formula");
}

Substitution permittedSubstitution(Rng& rng, const ExpansionTree& e) {
  std::set<std::string> eig;
  collectEigenvariables(e, eig);
  Substitution s;
  for (const auto& a : eig) {
    if (coin(rng, 0.5)) s.emplace(a, Term::symbol(a + "w"));
  }
  for (const char* v : {"u", "v", "a", "b", "c"}) {
    if (coin(rng, 0.4)) s.emplace(v, term(rng, {"u", "v", "w"}, 2));
  }
  return s;
}

namespace {

class LKBuilder {
 public:
  LKBuilder(Rng& rng, const LKParams& p) : rng_(rng), cutsLeft_(p.maxCuts) {}

  static std::size_t height(const Formula& a) { return 1 + 2 * complexity(a); }

  LKProof prove(std::vector<Formula> s, Formula pair, int budget) {
    if (!pair.isPositive()) pair = dual(pair);
    int need = static_cast<int>(height(pair));
    if (budget - 1 >= need) {
      if (cutsLeft_ > 0 && coin(rng_, 0.3)) return cut(std::move(s), pair, budget);
      if (coin(rng_, 0.35)) {
        if (auto p = noise(s, pair, budget)) return std::move(*p);
      }
    }
    return decompose(std::move(s), pair, budget);
  }

 private:
  static std::vector<Formula> without(std::vector<Formula> s, const Formula& f) {
    std::string k = formulaKey(f);
    for (auto it = s.begin(); it != s.end(); ++it) {
      if (formulaKey(*it) == k) {
        s.erase(it);
        return s;
      }
    }
    throw std::logic_error("formula not in sequent");
  }

  static std::vector<Formula> with(std::vector<Formula> s, std::initializer_list<Formula> fs) {
    s.insert(s.end(), fs.begin(), fs.end());
    return s;
  }

  std::vector<std::string> freeVars(const std::vector<Formula>& s) {
    std::set<std::string> out;
    for (const auto& f : s) {
      auto v = freeVariables(f);
      out.insert(v.begin(), v.end());
    }
    for (const char* c : {"a", "b", "c"}) out.erase(c);
    return {out.begin(), out.end()};
  }

  std::string freshEigen() { return "e" + std::to_string(eigen_++); }

  LKProof node(LKRule r, std::vector<Formula> concl) {
    LKProof p;
    p.rule = r;
    p.conclusion = std::move(concl);
    return p;
  }

  LKProof decompose(std::vector<Formula> s, const Formula& a, int budget) {
    switch (a.kind()) {
      case FormulaKind::PosAtom: {
        LKProof p = node(LKRule::Init, std::move(s));
        p.formula = a;
        return p;
      }
      case FormulaKind::Or: {
        // or on A, then and on its dual
        Formula na = dual(a);
        LKProof p = node(LKRule::Or, s);
        auto s1 = with(without(s, a), {a.left(), a.right()});
        LKProof q = node(LKRule::And, s1);
        auto s2 = without(s1, na);
        q.premises.push_back(prove(with(s2, {na.left()}), a.left(), budget - 2));
        q.premises.push_back(prove(with(s2, {na.right()}), a.right(), budget - 2));
        p.premises.push_back(std::move(q));
        return p;
      }
      case FormulaKind::Exists: {
        Formula na = dual(a);
        std::string alpha = freshEigen();
        Term t = Term::symbol(alpha);
        LKProof p = node(LKRule::Forall, s);
        p.eigenvariable = alpha;
        auto s1 = with(without(s, na), {substitute(na.body(), Substitution{{na.binder(), t}})});
        LKProof q = node(LKRule::Exists, s1);
        q.witness = t;
        Formula inst = substitute(a.body(), Substitution{{a.binder(), t}});
        q.premises.push_back(prove(with(s1, {inst}), inst, budget - 2));
        p.premises.push_back(std::move(q));
        return p;
      }
      default:
        throw std::logic_error("pair formula is not positive");
    }
  }

  LKProof cut(std::vector<Formula> s, const Formula& pair, int budget) {
    --cutsLeft_;
    Formula c = pair;
    switch (pick(rng_, 3)) {
      case 0:
        c = dual(pair);
        break;
      case 1:
        c = formula(rng_, {}, 2);
        break;
      default:
        break;
    }
    LKProof p = node(LKRule::Cut, s);
    p.formula = c;
    for (const Formula& side : {c, dual(c)}) {
      auto prem = s;
      if (coin(rng_, 0.5)) {
        prem.insert(prem.begin(), side);
      } else {
        prem.push_back(side);
      }
      p.premises.push_back(prove(std::move(prem), pair, budget - 1));
    }
    return p;
  }

  std::optional<LKProof> noise(const std::vector<Formula>& s, const Formula& pair, int budget) {
    std::string k1 = formulaKey(pair), k2 = formulaKey(dual(pair));
    std::vector<std::size_t> cand;
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::string k = formulaKey(s[i]);
      if (!s[i].isLiteral() && k != k1 && k != k2) cand.push_back(i);
    }
    if (cand.empty()) return std::nullopt;
    const Formula n = s[cand[static_cast<std::size_t>(pick(rng_, static_cast<int>(cand.size())))]];
    switch (n.kind()) {
      case FormulaKind::Or: {
        LKProof p = node(LKRule::Or, s);
        p.premises.push_back(prove(with(without(s, n), {n.left(), n.right()}), pair, budget - 1));
        return p;
      }
      case FormulaKind::And: {
        LKProof p = node(LKRule::And, s);
        p.premises.push_back(prove(with(without(s, n), {n.left()}), pair, budget - 1));
        p.premises.push_back(prove(with(without(s, n), {n.right()}), pair, budget - 1));
        return p;
      }
      case FormulaKind::Forall: {
        std::string alpha = freshEigen();
        LKProof p = node(LKRule::Forall, s);
        p.eigenvariable = alpha;
        Formula inst = substitute(n.body(), Substitution{{n.binder(), Term::symbol(alpha)}});
        p.premises.push_back(prove(with(without(s, n), {inst}), pair, budget - 1));
        return p;
      }
      case FormulaKind::Exists: {
        Term t = term(rng_, freeVars(s), 1);
        LKProof p = node(LKRule::Exists, s);
        p.witness = t;
        Formula inst = substitute(n.body(), Substitution{{n.binder(), t}});
        p.premises.push_back(prove(with(s, {inst}), pair, budget - 1));
        return p;
      }
      default:
        return std::nullopt;
    }
  }

  Rng& rng_;
  int cutsLeft_;
  int eigen_ = 0;
};

}  // namespace

LKProof lkProof(Rng& rng, const LKParams& params) {
  int maxC = std::min(params.pairComplexity, (params.height - 1) / 2);
  Formula a = formula(rng, {}, maxC);
  while (complexity(a) > static_cast<std::size_t>(maxC)) a = formula(rng, {}, maxC);
  std::vector<Formula> s{a, dual(a)};
  int n = pick(rng, params.noiseFormulas + 1);
  for (int i = 0; i < n; ++i) s.push_back(formula(rng, {}, 2));
  std::shuffle(s.begin(), s.end(), rng);
  LKBuilder b(rng, params);
  return b.prove(std::move(s), a, params.height);
}

}  // namespace gen

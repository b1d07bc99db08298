#include "expcut/syntax.hpp"

#include <algorithm>
#include <cctype>

#include "expcut/errors.hpp"

namespace expcut {

namespace {

enum class Tok { Ident, LParen, RParen, Comma, Tilde, Amp, Bar, Plus, LBracket, RBracket, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t start = 0;
  std::size_t end = 0;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::Ident:
      return "'" + t.text + "'";
    case Tok::End:
      return "end of input";
    default:
      return "'" + t.text + "'";
  }
}

bool isKeyword(const std::string& s) { return s == "ex" || s == "all"; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError(SourceSpan{tok_.start, tok_.end}, expected, describe(tok_));
  }

  void expect(Tok kind, const std::string& what) {
    if (tok_.kind != kind) fail(what);
    advance();
  }

  bool atIdent(std::string_view word) const { return tok_.kind == Tok::Ident && tok_.text == word; }

  std::string ident(const std::string& what) {
    if (tok_.kind != Tok::Ident || isKeyword(tok_.text)) fail(what);
    return take().text;
  }

  void expectEnd() {
    if (tok_.kind != Tok::End) fail("end of input");
  }

  Term term() {
    std::string name = ident("term");
    if (tok_.kind != Tok::LParen) return Term::symbol(std::move(name));
    advance();
    std::vector<Term> args;
    args.push_back(term());
    while (tok_.kind == Tok::Comma) {
      advance();
      args.push_back(term());
    }
    expect(Tok::RParen, "',' or ')'");
    return Term::apply(std::move(name), std::move(args));
  }

  Formula atom(bool positive) {
    std::string name = ident("atom");
    std::vector<Term> args;
    if (tok_.kind == Tok::LParen) {
      advance();
      args.push_back(term());
      while (tok_.kind == Tok::Comma) {
        advance();
        args.push_back(term());
      }
      expect(Tok::RParen, "',' or ')'");
    }
    return Formula::literal(positive, std::move(name), std::move(args));
  }

  Formula literal() {
    if (tok_.kind == Tok::Tilde) {
      advance();
      if (tok_.kind != Tok::Ident || isKeyword(tok_.text)) fail("atom after '~'");
      return atom(false);
    }
    return atom(true);
  }

  Formula formula() {
    Formula f = conjunction();
    while (tok_.kind == Tok::Bar) {
      advance();
      f = Formula::disj(f, conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (tok_.kind == Tok::Amp) {
      advance();
      f = Formula::conj(f, unary());
    }
    return f;
  }

  Formula unary() {
    if (tok_.kind == Tok::LParen) {
      advance();
      Formula f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (atIdent("all") || atIdent("ex")) {
      FormulaKind k = tok_.text == "all" ? FormulaKind::Forall : FormulaKind::Exists;
      advance();
      Token binderTok = tok_;
      std::string binder = ident("bound variable");
      Formula body = unary();
      return quantifier(k, binderTok, std::move(binder), std::move(body));
    }
    if (tok_.kind == Tok::Tilde || tok_.kind == Tok::Ident) return literal();
    fail("formula");
  }

  Formula quantifier(FormulaKind k, const Token& binderTok, std::string binder, Formula body) {
    if (!occursFree(binder, body)) {
      throw ParseError(SourceSpan{binderTok.start, binderTok.end},
                       "variable occurring in the quantifier body", describe(binderTok));
    }
    return Formula::quantifier(k, std::move(binder), std::move(body));
  }

  ExpansionTree tree() {
    if (tok_.kind != Tok::LParen) return ExpansionTree::leaf(literal());
    advance();
    if (atIdent("ex") || atIdent("all")) {
      bool ex = tok_.text == "ex";
      advance();
      Token binderTok = tok_;
      std::string binder = ident("bound variable");
      Formula matrix = formula();
      // validates non-vacuity with a position
      quantifier(ex ? FormulaKind::Exists : FormulaKind::Forall, binderTok, binder, matrix);
      if (ex) {
        std::vector<Instance> inst;
        do {
          expect(Tok::Plus, "'+['");
          expect(Tok::LBracket, "'['");
          Term t = term();
          expect(Tok::RBracket, "']'");
          ExpansionTree child = tree();
          inst.push_back({std::move(t), std::move(child)});
        } while (tok_.kind == Tok::Plus);
        expect(Tok::RParen, "'+[' or ')'");
        return ExpansionTree::exists(std::move(binder), std::move(matrix), std::move(inst));
      }
      expect(Tok::Plus, "'+['");
      expect(Tok::LBracket, "'['");
      std::string alpha = ident("eigenvariable");
      expect(Tok::RBracket, "']'");
      ExpansionTree child = tree();
      expect(Tok::RParen, "')'");
      return ExpansionTree::forall(std::move(binder), std::move(matrix), std::move(alpha), std::move(child));
    }
    ExpansionTree left = tree();
    TreeKind k;
    if (tok_.kind == Tok::Amp) {
      k = TreeKind::And;
    } else if (tok_.kind == Tok::Bar) {
      k = TreeKind::Or;
    } else {
      fail("'&' or '|'");
    }
    advance();
    ExpansionTree right = tree();
    expect(Tok::RParen, "')'");
    return ExpansionTree::binary(k, std::move(left), std::move(right));
  }

  ExpansionProof proof() {
    ExpansionProof p;
    while (tok_.kind != Tok::End) {
      if (atIdent("cut")) {
        advance();
        ExpansionTree a = tree();
        ExpansionTree b = tree();
        p.cuts.push_back(Cut::make(std::move(a), std::move(b)));
      } else if (atIdent("tree")) {
        advance();
        p.trees.push_back(tree());
      } else {
        fail("'cut' or 'tree'");
      }
    }
    return p;
  }

  std::vector<Formula> sequent() {
    expect(Tok::LBracket, "'['");
    std::vector<Formula> out;
    if (tok_.kind == Tok::RBracket) {
      advance();
      return out;
    }
    out.push_back(formula());
    while (tok_.kind == Tok::Comma) {
      advance();
      out.push_back(formula());
    }
    expect(Tok::RBracket, "',' or ']'");
    return out;
  }

  LKProof lk() {
    expect(Tok::LParen, "'('");
    if (tok_.kind != Tok::Ident) fail("rule name");
    std::string rule = tok_.text;
    LKProof node;
    std::size_t nPremises = 0;
    if (rule == "init") {
      node.rule = LKRule::Init;
      advance();
      if (tok_.kind != Tok::LBracket) node.formula = atom(true);
    } else if (rule == "forall") {
      node.rule = LKRule::Forall;
      advance();
      node.eigenvariable = ident("eigenvariable");
      nPremises = 1;
    } else if (rule == "exists") {
      node.rule = LKRule::Exists;
      advance();
      node.witness = term();
      nPremises = 1;
    } else if (rule == "and") {
      node.rule = LKRule::And;
      advance();
      nPremises = 2;
    } else if (rule == "or") {
      node.rule = LKRule::Or;
      advance();
      nPremises = 1;
    } else if (rule == "cut") {
      node.rule = LKRule::Cut;
      advance();
      node.formula = formula();
      nPremises = 2;
    } else {
      fail("rule name (init, forall, exists, and, or, cut)");
    }
    node.conclusion = sequent();
    if (node.rule == LKRule::Init && !node.formula) {
      // pick the first atom closing the sequent
      for (const auto& f : node.conclusion) {
        if (f.kind() == FormulaKind::PosAtom && f.predicate() == kTrueAtom) {
          node.formula = f;
          break;
        }
        if (f.kind() == FormulaKind::NegAtom && f.predicate() == kFalseAtom) {
          node.formula = dual(f);
          break;
        }
        if (f.kind() == FormulaKind::PosAtom &&
            std::find(node.conclusion.begin(), node.conclusion.end(), dual(f)) != node.conclusion.end()) {
          node.formula = f;
          break;
        }
      }
    }
    for (std::size_t i = 0; i < nPremises; ++i) node.premises.push_back(lk());
    expect(Tok::RParen, "')'");
    return node;
  }

 private:
  void advance() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
    tok_ = Token{};
    tok_.start = pos_;
    if (pos_ >= text_.size()) {
      tok_.kind = Tok::End;
      tok_.end = pos_;
      return;
    }
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t b = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      tok_.kind = Tok::Ident;
      tok_.text = std::string(text_.substr(b, pos_ - b));
      tok_.end = pos_;
      return;
    }
    ++pos_;
    tok_.end = pos_;
    tok_.text = std::string(1, c);
    switch (c) {
      case '(': tok_.kind = Tok::LParen; return;
      case ')': tok_.kind = Tok::RParen; return;
      case ',': tok_.kind = Tok::Comma; return;
      case '~': tok_.kind = Tok::Tilde; return;
      case '&': tok_.kind = Tok::Amp; return;
      case '|': tok_.kind = Tok::Bar; return;
      case '+': tok_.kind = Tok::Plus; return;
      case '[': tok_.kind = Tok::LBracket; return;
      case ']': tok_.kind = Tok::RBracket; return;
      default:
        throw ParseError(SourceSpan{tok_.start, tok_.end}, "token", "'" + tok_.text + "'");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token tok_;
};

void printTermTo(const Term& t, std::string& out) {
  out += t.name();
  if (t.isSymbol()) return;
  out += '(';
  bool first = true;
  for (const auto& a : t.arguments()) {
    if (!first) out += ',';
    first = false;
    printTermTo(a, out);
  }
  out += ')';
}

void printFormulaTo(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::NegAtom:
      out += '~';
      [[fallthrough]];
    case FormulaKind::PosAtom: {
      out += f.predicate();
      auto args = f.arguments();
      if (args.empty()) return;
      out += '(';
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ',';
        printTermTo(args[i], out);
      }
      out += ')';
      return;
    }
    case FormulaKind::And:
    case FormulaKind::Or:
      out += '(';
      printFormulaTo(f.left(), out);
      out += f.kind() == FormulaKind::And ? " & " : " | ";
      printFormulaTo(f.right(), out);
      out += ')';
      return;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      out += f.kind() == FormulaKind::Exists ? "ex " : "all ";
      out += f.binder();
      out += ' ';
      printFormulaTo(f.body(), out);
      return;
  }
}

void printTreeTo(const ExpansionTree& e, std::string& out) {
  switch (e.kind()) {
    case TreeKind::Leaf:
      printFormulaTo(e.literal(), out);
      return;
    case TreeKind::And:
    case TreeKind::Or:
      out += '(';
      printTreeTo(e.left(), out);
      out += e.kind() == TreeKind::And ? " & " : " | ";
      printTreeTo(e.right(), out);
      out += ')';
      return;
    case TreeKind::Exists:
      out += "(ex " + e.binder() + ' ';
      printFormulaTo(e.matrix(), out);
      for (const auto& i : e.instances()) {
        out += " +[";
        printTermTo(i.term, out);
        out += "] ";
        printTreeTo(i.child, out);
      }
      out += ')';
      return;
    case TreeKind::Forall:
      out += "(all " + e.binder() + ' ';
      printFormulaTo(e.matrix(), out);
      out += " +[" + e.eigenvariable() + "] ";
      printTreeTo(e.child(), out);
      out += ')';
      return;
  }
}

const char* ruleName(LKRule r) {
  switch (r) {
    case LKRule::Init: return "init";
    case LKRule::Forall: return "forall";
    case LKRule::Exists: return "exists";
    case LKRule::And: return "and";
    case LKRule::Or: return "or";
    case LKRule::Cut: return "cut";
  }
  return "?";
}

void printLKTo(const LKProof& pi, int indent, std::string& out) {
  out.append(static_cast<std::size_t>(indent) * 2, ' ');
  out += '(';
  out += ruleName(pi.rule);
  switch (pi.rule) {
    case LKRule::Init:
    case LKRule::Cut:
      if (pi.formula) out += ' ' + printFormula(*pi.formula);
      break;
    case LKRule::Forall:
      out += ' ' + pi.eigenvariable;
      break;
    case LKRule::Exists:
      if (pi.witness) out += ' ' + printTerm(*pi.witness);
      break;
    default:
      break;
  }
  out += ' ' + printSequent(pi.conclusion);
  for (const auto& p : pi.premises) {
    out += '\n';
    printLKTo(p, indent + 1, out);
  }
  out += ')';
}

}  // namespace

Term parseTerm(std::string_view text) {
  Parser p(text);
  Term t = p.term();
  p.expectEnd();
  return t;
}

Formula parseFormula(std::string_view text) {
  Parser p(text);
  Formula f = p.formula();
  p.expectEnd();
  return f;
}

ExpansionTree parseExpansionTree(std::string_view text) {
  Parser p(text);
  ExpansionTree e = p.tree();
  p.expectEnd();
  return e;
}

ExpansionProof parseExpansionProof(std::string_view text) {
  Parser p(text);
  return p.proof();
}

LKProof parseLKProof(std::string_view text) {
  Parser p(text);
  LKProof pi = p.lk();
  p.expectEnd();
  return pi;
}

std::string printTerm(const Term& t) {
  std::string out;
  printTermTo(t, out);
  return out;
}

std::string printFormula(const Formula& f) {
  std::string out;
  printFormulaTo(f, out);
  return out;
}

std::string printTree(const ExpansionTree& e) {
  std::string out;
  printTreeTo(e, out);
  return out;
}

std::string printCut(const Cut& c) { return printTree(c.positive) + ' ' + printTree(c.negative); }

std::string printBranch(const Branch& b) {
  std::string out = "[";
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) out += ", ";
    out += b[i].formula ? printFormula(*b[i].formula) : std::to_string(b[i].marker);
  }
  return out + "]";
}

std::string printSequent(const std::vector<Formula>& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += printFormula(s[i]);
  }
  return out + "]";
}

std::string printExpansionProof(const ExpansionProof& p) {
  std::string out;
  for (const auto& c : p.cuts) out += "cut " + printCut(c) + '\n';
  for (const auto& t : p.trees) out += "tree " + printTree(t) + '\n';
  return out;
}

std::string canonicalPrint(const ExpansionProof& p) {
  std::vector<std::string> cuts, trees;
  for (const auto& c : p.cuts) cuts.push_back("cut " + printCut(c));
  for (const auto& t : p.trees) trees.push_back("tree " + printTree(t));
  std::sort(cuts.begin(), cuts.end());
  std::sort(trees.begin(), trees.end());
  std::string out;
  for (const auto& s : cuts) out += s + '\n';
  for (const auto& s : trees) out += s + '\n';
  return out;
}

std::string printLKProof(const LKProof& pi) {
  std::string out;
  printLKTo(pi, 0, out);
  return out + '\n';
}

std::string formulaKey(const Formula& f) { return printFormula(alphaCanonical(f)); }

bool equalModuloPermutation(const ExpansionProof& a, const ExpansionProof& b) {
  return canonicalPrint(a) == canonicalPrint(b);
}

}  // namespace expcut

#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "expcut/check.hpp"
#include "expcut/cutelim.hpp"
#include "expcut/dependency.hpp"
#include "expcut/errors.hpp"
#include "expcut/lk.hpp"
#include "expcut/syntax.hpp"

namespace expcut::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path, std::istream& in) {
  if (path == "-") {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// LK proofs are s-expressions; expansion proofs are line-based.
bool looksLikeLK(const std::string& text) {
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    } else if (text[i] == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else {
      return text[i] == '(';
    }
  }
  return false;
}

struct Settings {
  std::string file;
  std::string strategy = "maximal";
  bool verifyEachStep = false;
  bool dedup = false;
  std::size_t maxSteps = 10000;
  std::string tracePath;
  std::string semantics = "multiset";
  bool skipInputCheck = false;
};

SequentSemantics semanticsOf(const Settings& s) {
  return s.semantics == "set" ? SequentSemantics::Set : SequentSemantics::Multiset;
}

ExpansionProof needExpansionProof(const std::string& text) {
  if (looksLikeLK(text)) throw UsageError("expected an expansion proof, got an LK proof");
  return parseExpansionProof(text);
}

LKProof needLK(const std::string& text) {
  if (!looksLikeLK(text)) throw UsageError("expected an LK proof, got an expansion proof");
  return parseLKProof(text);
}

int doCheck(const Settings& s, const std::string& text, std::ostream& out, std::ostream& err) {
  if (looksLikeLK(text)) {
    auto pi = parseLKProof(text);
    auto report = checkLK(pi, false, semanticsOf(s));
    if (report.ok()) {
      out << "LK proof: ok\n";
      return 0;
    }
    err << "LK proof: FAILED\n";
    for (const auto& v : report.violations) err << "  " << v << "\n";
    return 1;
  }
  auto report = checkProof(parseExpansionProof(text));
  (report.ok() ? out : err) << report.format();
  return report.ok() ? 0 : 1;
}

Strategy makeStrategy(const Settings& s, std::istream& in, std::ostream& out) {
  if (s.strategy == "maximal") return Strategy::maximal();
  if (s.strategy.rfind("class=", 0) == 0) return Strategy::preferClass(parseFormula(s.strategy.substr(6)));
  if (s.strategy == "interactive") {
    return Strategy::selecting([&in, &out](const ExpansionProof& p, const std::vector<CutClass>& classes) {
      out << "current proof:\n" << printExpansionProof(p) << "classes:\n";
      for (std::size_t i = 0; i < classes.size(); ++i) {
        out << "  [" << i << "] " << printFormula(classes[i].classFormula) << "  rank " << classes[i].rank
            << ", " << classes[i].members.size() << " cut(s)\n";
      }
      for (;;) {
        out << "reduce class> " << std::flush;
        std::string line;
        if (!std::getline(in, line)) throw InvalidInput("interactive session ended before the proof was cut-free");
        try {
          std::size_t pos = 0;
          unsigned long k = std::stoul(line, &pos);
          if (k < classes.size()) return static_cast<std::size_t>(k);
        } catch (const std::exception&) {
        }
        out << "enter a class index between 0 and " << classes.size() - 1 << "\n";
      }
    });
  }
  throw UsageError("unknown strategy " + s.strategy);
}

int doEliminate(const Settings& s, const std::string& text, std::istream& in, std::ostream& out) {
  auto p = needExpansionProof(text);
  NormalizeOptions opts;
  opts.verifyEachStep = s.verifyEachStep;
  opts.dedup = s.dedup;
  opts.maxSteps = s.maxSteps;
  opts.checkInput = !s.skipInputCheck;
  opts.snapshots = !s.tracePath.empty();
  auto trace = normalize(p, makeStrategy(s, in, out), opts);
  if (!s.tracePath.empty()) {
    std::ofstream f(s.tracePath, std::ios::binary);
    if (!f) throw UsageError("cannot write " + s.tracePath);
    f << traceToJson(trace);
  }
  out << printExpansionProof(trace.finalProof);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Expansion proofs with cuts: checking, translation to and from LK, cut elimination"};
  app.require_subcommand(1);
  Settings s;

  auto* check = app.add_subcommand("check", "check an expansion proof or an LK proof");
  auto* expandCmd = app.add_subcommand("expand", "translate an LK proof into an expansion proof");
  auto* seqCmd = app.add_subcommand("sequentialize", "translate an expansion proof into an LK proof");
  auto* elim = app.add_subcommand("eliminate", "eliminate the cuts of an expansion proof");
  auto* dep = app.add_subcommand("depgraph", "print the dependency relation as DOT");
  auto* fmt = app.add_subcommand("fmt", "reprint a proof in normal layout");
  for (auto* sub : {check, expandCmd, seqCmd, elim, dep, fmt}) {
    sub->add_option("file", s.file, "input file, - for standard input")->required();
  }
  check->add_option("--sequent-semantics", s.semantics, "sequent semantics for LK proofs")
      ->check(CLI::IsMember({"set", "multiset"}));
  seqCmd->add_flag("--skip-input-check", s.skipInputCheck, "do not run the proof checks first");
  elim->add_option("--strategy", s.strategy, "maximal | interactive | class=<formula>");
  elim->add_flag("--verify-each-step", s.verifyEachStep, "run the proof checks after every step");
  elim->add_flag("--dedup", s.dedup, "contract identical cuts and trees after every step");
  elim->add_option("--max-steps", s.maxSteps, "give up after this many steps");
  elim->add_option("--trace", s.tracePath, "write a JSON trace here");
  elim->add_flag("--skip-input-check", s.skipInputCheck, "do not run the proof checks first");

  std::vector<const char*> argv{"expcut"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    std::string text = slurp(s.file, in);
    if (check->parsed()) return doCheck(s, text, out, err);
    if (expandCmd->parsed()) {
      out << printExpansionProof(expand(needLK(text)));
      return 0;
    }
    if (seqCmd->parsed()) {
      SequentializeOptions opts;
      opts.checkInput = !s.skipInputCheck;
      out << printLKProof(sequentialize(needExpansionProof(text), opts));
      return 0;
    }
    if (elim->parsed()) return doEliminate(s, text, in, out);
    if (dep->parsed()) {
      out << DependencyGraph(needExpansionProof(text)).toDot();
      return 0;
    }
    if (fmt->parsed()) {
      out << (looksLikeLK(text) ? printLKProof(parseLKProof(text)) : printExpansionProof(parseExpansionProof(text)));
      return 0;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace expcut::cli

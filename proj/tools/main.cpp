#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "prmachine/prmachine.hpp"

namespace {

using namespace prm;

struct CliConfig {
  std::uint64_t budget = 1000000;
  std::size_t maxNodes = 3;
  std::size_t maxCodeSize = 3;
  std::string format = "text";
  std::uint64_t seed = 0;
  std::size_t bignumPrintLimitBits = 4096;
  bool force = false;
};

bool sexp(const CliConfig& cfg) { return cfg.format == "sexp"; }

std::string quote(const std::string& s) { return "\"" + s + "\""; }

TValue toTyped(const ObjType& shape, const XValue& x) {
  switch (shape.kind()) {
    case ObjType::Kind::Unit:
      if (x == XValue::num(0)) return TValue::unit();
      break;
    case ObjType::Kind::Nat:
      if (x.isNum()) return TValue::nat(x.numValue());
      break;
    case ObjType::Kind::Prod:
      if (x.isPair())
        return TValue::pair(toTyped(shape.left(), x.left()), toTyped(shape.right(), x.right()));
      break;
  }
  throw ShapeMismatch("argument " + x.toString() + " does not fit shape " + shape.toString());
}

int cmdEval(const CliConfig& cfg, const std::string& termText, const std::string& argText) {
  Code code = parseCode(termText);
  XValue arg = parseValue(argText);
  EvalResult r = eval(code, arg, cfg.budget);
  if (r.ok()) {
    if (sexp(cfg))
      std::cout << "(ok (value " << quote(printValue(*r)) << "))\n";
    else
      std::cout << printValue(*r) << "\n";
    return 0;
  }
  const Exhausted& e = *r.exhausted;
  if (sexp(cfg))
    std::cout << "(exhausted (steps " << e.budget << ") (code " << quote(printCode(e.last.code))
              << ") (value " << quote(printValue(e.last.arg)) << "))\n";
  else
    std::cout << "EXHAUSTED after " << e.budget << " steps\nresidual code: "
              << printCode(e.last.code) << "\nresidual value: " << printValue(e.last.arg)
              << "\n";
  return 0;
}

int cmdTrace(const CliConfig& cfg, const std::string& termText, const std::string& argText) {
  Code code = parseCode(termText);
  XValue arg = parseValue(argText);
  Trace t = trace(code, arg, cfg.budget);
  if (sexp(cfg)) {
    std::cout << "(trace";
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
      const auto& [state, c] = t.steps[i];
      std::cout << " (step " << i << " (complexity " << quote(c.toString()) << ") (size "
                << state.code.size() << ") (code " << quote(printCode(state.code))
                << ") (value " << quote(printValue(state.arg)) << "))";
    }
    std::cout << " (exhausted " << (t.exhausted ? "yes" : "no") << "))\n";
    return 0;
  }
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const auto& [state, c] = t.steps[i];
    std::cout << i << "\t" << c.toString() << "\t" << state.code.size() << "\t"
              << printCode(state.code) << "\t" << printValue(state.arg) << "\n";
  }
  if (t.exhausted) std::cout << "# exhausted at budget " << cfg.budget << "\n";
  return 0;
}

int cmdCheck(const CliConfig& cfg, const std::string& termText) {
  try {
    TypedTerm t = parseTerm(termText);
    Signature sig = typecheck(t);
    if (sexp(cfg))
      std::cout << "(ok (dom " << quote(sig.dom.toString()) << ") (cod "
                << quote(sig.cod.toString()) << "))\n";
    else
      std::cout << sig.dom.toString() << " -> " << sig.cod.toString() << "\n";
    return 0;
  } catch (const TypeError& e) {
    if (sexp(cfg))
      std::cout << "(type-error (location " << quote(e.location) << ") (expected "
                << quote(e.expected) << ") (found " << quote(e.found) << "))\n";
    else
      std::cout << e.what() << "\n";
    return 1;
  }
}

int cmdEncode(const CliConfig& cfg, const std::string& text) {
  BigNat g;
  try {
    g = encodeValue(parseValue(text));
  } catch (const SyntaxError&) {
    g = encodeCode(parseCode(text));
  }
  std::size_t bits = mpz_sizeinbase(g.get_mpz_t(), 2);
  if (bits > cfg.bignumPrintLimitBits && !cfg.force) {
    std::cerr << "encoding needs " << bits << " bits, above the print limit of "
              << cfg.bignumPrintLimitBits << "; pass --force to print anyway\n";
    return 1;
  }
  if (sexp(cfg))
    std::cout << "(ok (godel " << g.get_str() << "))\n";
  else
    std::cout << g.get_str() << "\n";
  return 0;
}

int cmdDecode(const CliConfig& cfg, const std::string& digits, const std::string& as) {
  BigNat g;
  if (mpz_set_str(g.get_mpz_t(), digits.c_str(), 10) != 0) {
    std::cerr << "not a decimal integer: " << digits << "\n";
    return 1;
  }
  if (as == "value" || as == "auto") {
    if (auto v = tryDecodeValue(g)) {
      if (sexp(cfg))
        std::cout << "(ok (value " << quote(printValue(*v)) << "))\n";
      else
        std::cout << printValue(*v) << "\n";
      return 0;
    }
    if (as == "value") {
      std::cerr << "integer is not a value encoding\n";
      return 1;
    }
  }
  if (auto c = tryDecodeCode(g)) {
    if (sexp(cfg))
      std::cout << "(ok (code " << quote(printCode(*c)) << "))\n";
    else
      std::cout << printCode(*c) << "\n";
    return 0;
  }
  std::cerr << "integer is not a " << (as == "code" ? "code" : "value or code")
            << " encoding\n";
  return 1;
}

int cmdStdlib(const CliConfig& cfg, const std::string& name) {
  if (name.empty()) {
    for (const auto& e : stdlibEntries()) {
      if (sexp(cfg))
        std::cout << "(entry (name " << e.name << ") (dom " << quote(e.sig.dom.toString())
                  << ") (cod " << quote(e.sig.cod.toString()) << "))\n";
      else
        std::cout << e.name << " : " << e.sig.dom.toString() << " -> " << e.sig.cod.toString()
                  << "\n";
    }
    return 0;
  }
  const StdlibEntry& e = stdlib(name);
  if (sexp(cfg))
    std::cout << "(entry (name " << e.name << ") (dom " << quote(e.sig.dom.toString())
              << ") (cod " << quote(e.sig.cod.toString()) << ") (term "
              << quote(printTerm(e.term)) << "))\n";
  else
    std::cout << e.name << " : " << e.sig.dom.toString() << " -> " << e.sig.cod.toString()
              << "\n" << printTerm(e.term) << "\n";
  return 0;
}

std::vector<DTree> readProofFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  std::vector<DTree> trees;
  std::size_t pos = 0;
  while (true) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) break;
    std::size_t depth = 0, end = pos;
    bool inString = false;
    for (; end < text.size(); ++end) {
      char ch = text[end];
      if (ch == '"') inString = !inString;
      if (inString) continue;
      if (ch == '(') ++depth;
      if (ch == ')' && --depth == 0) {
        ++end;
        break;
      }
    }
    trees.push_back(parseProof(text.substr(pos, end - pos)));
    pos = end;
  }
  return trees;
}

int cmdProveCheck(const CliConfig& cfg, const std::string& path) {
  auto trees = readProofFile(path);
  bool allValid = true;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    auto violations = checkTree(trees[i]);
    if (violations.empty()) {
      if (sexp(cfg))
        std::cout << "(tree " << i << " valid)\n";
      else
        std::cout << "tree " << i << ": valid\n";
    } else {
      allValid = false;
      for (const auto& v : violations) {
        if (sexp(cfg))
          std::cout << "(tree " << i << " (violation (path " << quote(v.path) << ") (message "
                    << quote(v.message) << ")))\n";
        else
          std::cout << "tree " << i << ": violation at ["
                    << (v.path.empty() ? "root" : v.path) << "] " << v.message << "\n";
      }
    }
  }
  return allValid ? 0 : 1;
}

int cmdProveEval(const CliConfig& cfg, const std::string& path, const std::string& argText) {
  auto trees = readProofFile(path);
  XValue arg = parseValue(argText);
  int status = 0;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    auto violations = checkTree(trees[i]);
    if (!violations.empty()) {
      std::cout << (sexp(cfg) ? "(tree " + std::to_string(i) + " invalid)"
                              : "tree " + std::to_string(i) + ": invalid, not evaluated")
                << "\n";
      status = std::max(status, 1);
      continue;
    }
    ArgVerdict v = evalTree(trees[i], arg, cfg.budget);
    switch (v.kind) {
      case ArgVerdict::Kind::Sound: {
        bool equal = v.lhsValue == v.rhsValue;
        if (sexp(cfg))
          std::cout << "(tree " << i << " (sound (lhs " << quote(printValue(v.lhsValue))
                    << ") (rhs " << quote(printValue(v.rhsValue)) << ") (equal "
                    << (equal ? "yes" : "no") << ")))\n";
        else
          std::cout << "tree " << i << ": sound, " << printValue(v.lhsValue) << " vs "
                    << printValue(v.rhsValue) << (equal ? " (equal)" : " (UNEQUAL)") << "\n";
        if (!equal) status = 2;
        break;
      }
      case ArgVerdict::Kind::Exhausted:
        std::cout << (sexp(cfg)
                          ? "(tree " + std::to_string(i) + " (exhausted " +
                                std::to_string(v.budgetSpent) + "))"
                          : "tree " + std::to_string(i) + ": exhausted at budget " +
                                std::to_string(v.budgetSpent))
                  << "\n";
        break;
      case ArgVerdict::Kind::IllArgumented:
        std::cout << (sexp(cfg) ? "(tree " + std::to_string(i) + " ill-argumented)"
                                : "tree " + std::to_string(i) + ": ill-argumented")
                  << "\n";
        break;
    }
  }
  return status;
}

int cmdEnumerate(const CliConfig& cfg) {
  for (const DTree& t : enumerateTrees(cfg.maxNodes, cfg.maxCodeSize))
    std::cout << printProof(t) << "\n";
  return 0;
}

std::vector<XValue> seededArguments(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<XValue> out;
  auto value = [&](auto&& self, std::size_t depth) -> XValue {
    if (depth == 0 || rng() % 2 == 0)
      return XValue::num(rng() % 4);
    return XValue::pair(self(self, depth - 1), self(self, depth - 1));
  };
  for (std::size_t i = 0; i < count; ++i) out.push_back(value(value, 2));
  return out;
}

int cmdSearch(const CliConfig& cfg, const std::string& argsPath) {
  std::vector<XValue> args;
  if (!argsPath.empty()) {
    std::ifstream in(argsPath);
    if (!in) {
      std::cerr << "cannot open " << argsPath << "\n";
      return 1;
    }
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      args.push_back(parseValue(line));
    }
  } else {
    args = seededArguments(cfg.seed, 5);
  }
  SearchReport report = soundnessSearch(cfg.maxNodes, cfg.maxCodeSize, args, cfg.budget);
  std::cout << (sexp(cfg) ? report.toSexp() + "\n" : report.toText());
  return report.clean() ? 0 : 2;
}

int cmdMu(const CliConfig& cfg, const std::string& phiText, const std::string& argText,
          std::uint64_t bound) {
  TypedTerm phi = parseTerm(phiText);
  Signature sig = typecheck(phi);
  if (!sig.dom.isProd()) throw TypeError("mu.predicate", "(A*N)->N", sig.dom.toString());
  TValue a = toTyped(sig.dom.left(), parseValue(argText));
  auto r = mu(phi, a, bound);
  if (r.isDefined()) {
    if (sexp(cfg))
      std::cout << "(defined " << *r << ")\n";
    else
      std::cout << "defined: " << *r << "\n";
  } else {
    if (sexp(cfg))
      std::cout << "(undefined (budget-spent " << r.budgetSpent << "))\n";
    else
      std::cout << "undefined, budget spent: " << r.budgetSpent << "\n";
  }
  return 0;
}

int cmdWhile(const CliConfig& cfg, const std::string& chiText, const std::string& fText,
             const std::string& argText, std::uint64_t bound) {
  TypedTerm chi = parseTerm(chiText);
  TypedTerm f = parseTerm(fText);
  TValue a = toTyped(typecheck(chi).dom, parseValue(argText));
  auto r = whileLoop(chi, f, a, bound);
  auto rs = whileLoopStatic(chi, f, a, bound);
  if (r.isDefined() != rs.isDefined() || (r.isDefined() && !(*r == *rs))) {
    std::cerr << "internal disagreement between loop implementations\n";
    return 2;
  }
  if (r.isDefined()) {
    if (sexp(cfg))
      std::cout << "(defined (value " << quote(r.value->toString()) << "))\n";
    else
      std::cout << "defined: " << r.value->toString() << "\n";
  } else {
    if (sexp(cfg))
      std::cout << "(undefined (budget-spent " << r.budgetSpent << "))\n";
    else
      std::cout << "undefined, budget spent: " << r.budgetSpent << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"virtual machine and proof checker for primitive recursive map codes"};
  app.require_subcommand(1);
  app.fallthrough();

  CliConfig cfg;
  if (const char* env = std::getenv("PRMACHINE_BUDGET")) cfg.budget = std::strtoull(env, nullptr, 10);
  app.add_option("--budget", cfg.budget, "step budget for evaluations")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "output format: text or sexp")
      ->check(CLI::IsMember({"text", "sexp"}));
  app.add_option("--seed", cfg.seed, "seed for sampled search arguments");
  app.add_option("--bignum-print-limit-bits", cfg.bignumPrintLimitBits,
                 "refuse to print encodings beyond this size");
  app.add_flag("--force", cfg.force, "print oversized encodings anyway");

  std::string termText, argText, fileText, name, digits, fText;
  std::string decodeAs = "auto";
  std::uint64_t bound = 100;

  CLI::App* evalCmd = app.add_subcommand("eval", "evaluate a map code on a value");
  evalCmd->fallthrough();
  evalCmd->add_option("term", termText)->required();
  evalCmd->add_option("arg", argText)->required();

  CLI::App* traceCmd = app.add_subcommand("trace", "print the full step/complexity history");
  traceCmd->fallthrough();
  traceCmd->add_option("term", termText)->required();
  traceCmd->add_option("arg", argText)->required();

  CLI::App* checkCmd = app.add_subcommand("check", "typecheck a typed term");
  checkCmd->fallthrough();
  checkCmd->add_option("term", termText)->required();

  CLI::App* encodeCmd = app.add_subcommand("encode", "print the goedel integer of a term or value");
  encodeCmd->fallthrough();
  encodeCmd->add_option("text", termText)->required();

  CLI::App* decodeCmd = app.add_subcommand("decode", "decode a goedel integer");
  decodeCmd->fallthrough();
  decodeCmd->add_option("integer", digits)->required();
  decodeCmd->add_option("--as", decodeAs, "auto, value, or code")
      ->check(CLI::IsMember({"auto", "value", "code"}));

  CLI::App* stdlibCmd = app.add_subcommand("stdlib", "list or show stdlib entries");
  stdlibCmd->fallthrough();
  stdlibCmd->add_option("name", name);

  CLI::App* proveCheckCmd = app.add_subcommand("prove-check", "validate a proof file");
  proveCheckCmd->fallthrough();
  proveCheckCmd->add_option("file", fileText)->required();

  CLI::App* proveEvalCmd = app.add_subcommand("prove-eval", "evaluate an argumented proof file");
  proveEvalCmd->fallthrough();
  proveEvalCmd->add_option("file", fileText)->required();
  proveEvalCmd->add_option("arg", argText)->required();

  CLI::App* enumCmd = app.add_subcommand("enumerate", "stream valid deduction trees");
  enumCmd->fallthrough();
  enumCmd->add_option("--max-nodes", cfg.maxNodes)->required()->check(CLI::PositiveNumber);
  enumCmd->add_option("--max-code-size", cfg.maxCodeSize)->required()->check(CLI::PositiveNumber);

  CLI::App* searchCmd = app.add_subcommand("search", "soundness and consistency search");
  searchCmd->fallthrough();
  searchCmd->add_option("--max-nodes", cfg.maxNodes)->required()->check(CLI::PositiveNumber);
  searchCmd->add_option("--max-code-size", cfg.maxCodeSize)->required()->check(CLI::PositiveNumber);
  searchCmd->add_option("--args", fileText, "file with one value literal per line");

  CLI::App* muCmd = app.add_subcommand("mu", "bounded minimisation of a predicate");
  muCmd->fallthrough();
  muCmd->add_option("predicate", termText)->required();
  muCmd->add_option("arg", argText)->required();
  muCmd->add_option("--bound", bound);

  CLI::App* whileCmd = app.add_subcommand("while", "bounded content-driven loop");
  whileCmd->fallthrough();
  whileCmd->add_option("control", termText)->required();
  whileCmd->add_option("step", fText)->required();
  whileCmd->add_option("arg", argText)->required();
  whileCmd->add_option("--bound", bound);

  CLI11_PARSE(app, argc, argv);

  try {
    if (evalCmd->parsed()) return cmdEval(cfg, termText, argText);
    if (traceCmd->parsed()) return cmdTrace(cfg, termText, argText);
    if (checkCmd->parsed()) return cmdCheck(cfg, termText);
    if (encodeCmd->parsed()) return cmdEncode(cfg, termText);
    if (decodeCmd->parsed()) return cmdDecode(cfg, digits, decodeAs);
    if (stdlibCmd->parsed()) return cmdStdlib(cfg, name);
    if (proveCheckCmd->parsed()) return cmdProveCheck(cfg, fileText);
    if (proveEvalCmd->parsed()) return cmdProveEval(cfg, fileText, argText);
    if (enumCmd->parsed()) return cmdEnumerate(cfg);
    if (searchCmd->parsed()) return cmdSearch(cfg, fileText);
    if (muCmd->parsed()) return cmdMu(cfg, termText, argText, bound);
    if (whileCmd->parsed()) return cmdWhile(cfg, termText, fText, argText, bound);
  } catch (const SyntaxError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const TypeError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 1;
}

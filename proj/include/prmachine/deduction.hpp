#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "prmachine/code.hpp"
#include "prmachine/eval.hpp"
#include "prmachine/stdlib.hpp"
#include "prmachine/surface.hpp"
#include "prmachine/value.hpp"

namespace prm {

enum class RuleTag : std::uint8_t {
  Refl,
  Sym,
  Trans,
  CompatCompFirst,
  CompatCompSecond,
  CompatInd,
  AxAssoc,
  AxNeutralL,
  AxNeutralR,
  AxGodementL,
  AxGodementR,
  AxSP,
  AxDistr,
  AxIterAnchor,
  AxIterStep,
  FreydUniq,
};

inline const char* ruleName(RuleTag r) {
  switch (r) {
    case RuleTag::Refl: return "refl";
    case RuleTag::Sym: return "sym";
    case RuleTag::Trans: return "trans";
    case RuleTag::CompatCompFirst: return "compat-comp-first";
    case RuleTag::CompatCompSecond: return "compat-comp-second";
    case RuleTag::CompatInd: return "compat-ind";
    case RuleTag::AxAssoc: return "ax-assoc";
    case RuleTag::AxNeutralL: return "ax-neutral-l";
    case RuleTag::AxNeutralR: return "ax-neutral-r";
    case RuleTag::AxGodementL: return "ax-godement-l";
    case RuleTag::AxGodementR: return "ax-godement-r";
    case RuleTag::AxSP: return "ax-sp";
    case RuleTag::AxDistr: return "ax-distr";
    case RuleTag::AxIterAnchor: return "ax-iter-anchor";
    case RuleTag::AxIterStep: return "ax-iter-step";
    case RuleTag::FreydUniq: return "freyd-uniq";
  }
  return "?";
}

inline std::optional<RuleTag> ruleFromName(const std::string& name) {
  for (int i = 0; i <= static_cast<int>(RuleTag::FreydUniq); ++i) {
    RuleTag r = static_cast<RuleTag>(i);
    if (name == ruleName(r)) return r;
  }
  return std::nullopt;
}

/// Internal equality deduction tree: a rule instance whose root equates
/// two codes, with premise subtrees as the rule demands.
struct DTree {
  Code lhs;
  Code rhs;
  RuleTag rule = RuleTag::Refl;
  std::vector<DTree> premises;

  friend bool operator==(const DTree& a, const DTree& b) {
    return a.rule == b.rule && a.lhs == b.lhs && a.rhs == b.rhs && a.premises == b.premises;
  }

  std::size_t nodeCount() const {
    std::size_t n = 1;
    for (const auto& p : premises) n += p.nodeCount();
    return n;
  }
};

inline int treeCompare(const DTree& a, const DTree& b) {
  if (a.rule != b.rule) return a.rule < b.rule ? -1 : 1;
  if (int c = structuralCompare(a.lhs, b.lhs)) return c;
  if (int c = structuralCompare(a.rhs, b.rhs)) return c;
  if (a.premises.size() != b.premises.size())
    return a.premises.size() < b.premises.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.premises.size(); ++i)
    if (int c = treeCompare(a.premises[i], b.premises[i])) return c;
  return 0;
}

/// The internal zero-constant initialiser <id ; (zero o pi)>, the right
/// factor of the iteration anchor.
inline const Code& zeroInit() {
  static const Code c =
      Code::ind(Code::basic(Basic::Id),
                Code::comp(Code::basic(Basic::Zero), Code::basic(Basic::Pi)));
  return c;
}

/// The counter bump <id # s>, the right factor of the iteration step.
inline const Code& idSucc() {
  static const Code c = Code::prod(Code::basic(Basic::Id), Code::basic(Basic::Succ));
  return c;
}

struct Violation {
  std::string path;  // premise indices from the root, e.g. "0.1"
  std::string message;
};

namespace detail {

inline void checkNode(const DTree& t, const std::string& path, std::vector<Violation>& out) {
  auto bad = [&](const std::string& message) { out.push_back({path, message}); };
  auto premiseCount = [&](std::size_t n) {
    if (t.premises.size() != n) {
      bad(std::string(ruleName(t.rule)) + " takes " + std::to_string(n) + " premises, has " +
          std::to_string(t.premises.size()));
      return false;
    }
    return true;
  };

  switch (t.rule) {
    case RuleTag::Refl:
      if (premiseCount(0) && !(t.lhs == t.rhs)) bad("refl sides differ");
      break;
    case RuleTag::Sym:
      if (premiseCount(1) &&
          !(t.premises[0].lhs == t.rhs && t.premises[0].rhs == t.lhs))
        bad("sym premise is not the swapped root");
      break;
    case RuleTag::Trans:
      if (premiseCount(2)) {
        if (!(t.premises[0].lhs == t.lhs)) bad("trans left end mismatch");
        if (!(t.premises[0].rhs == t.premises[1].lhs)) bad("trans middle codes differ");
        if (!(t.premises[1].rhs == t.rhs)) bad("trans right end mismatch");
      }
      break;
    case RuleTag::CompatCompFirst:
      if (premiseCount(1)) {
        if (t.lhs.kind() != Code::Kind::Comp || t.rhs.kind() != Code::Kind::Comp) {
          bad("root sides must be compositions");
          break;
        }
        if (!(t.lhs.first() == t.rhs.first())) bad("outer codes differ");
        if (!(t.premises[0].lhs == t.lhs.second() && t.premises[0].rhs == t.rhs.second()))
          bad("premise does not equate the inner codes");
      }
      break;
    case RuleTag::CompatCompSecond:
      if (premiseCount(1)) {
        if (t.lhs.kind() != Code::Kind::Comp || t.rhs.kind() != Code::Kind::Comp) {
          bad("root sides must be compositions");
          break;
        }
        if (!(t.lhs.second() == t.rhs.second())) bad("inner codes differ");
        if (!(t.premises[0].lhs == t.lhs.first() && t.premises[0].rhs == t.rhs.first()))
          bad("premise does not equate the outer codes");
      }
      break;
    case RuleTag::CompatInd:
      if (premiseCount(1)) {
        if (t.lhs.kind() != Code::Kind::Ind || t.rhs.kind() != Code::Kind::Ind) {
          bad("root sides must be induced maps");
          break;
        }
        bool leftChanged = t.premises[0].lhs == t.lhs.first() &&
                           t.premises[0].rhs == t.rhs.first() &&
                           t.lhs.second() == t.rhs.second();
        bool rightChanged = t.premises[0].lhs == t.lhs.second() &&
                            t.premises[0].rhs == t.rhs.second() &&
                            t.lhs.first() == t.rhs.first();
        if (!leftChanged && !rightChanged)
          bad("premise must equate exactly one induced component");
      }
      break;
    case RuleTag::AxAssoc: {
      if (!premiseCount(0)) break;
      bool ok = t.lhs.kind() == Code::Kind::Comp && t.lhs.first().kind() == Code::Kind::Comp &&
                t.rhs.kind() == Code::Kind::Comp && t.rhs.second().kind() == Code::Kind::Comp &&
                t.lhs.first().first() == t.rhs.first() &&
                t.lhs.first().second() == t.rhs.second().first() &&
                t.lhs.second() == t.rhs.second().second();
      if (!ok) bad("not an associativity instance");
      break;
    }
    case RuleTag::AxNeutralL:
      if (premiseCount(0) &&
          !(t.lhs.kind() == Code::Kind::Comp && t.lhs.first().isBasic(Basic::Id) &&
            t.lhs.second() == t.rhs))
        bad("not a left-neutrality instance");
      break;
    case RuleTag::AxNeutralR:
      if (premiseCount(0) &&
          !(t.lhs.kind() == Code::Kind::Comp && t.lhs.second().isBasic(Basic::Id) &&
            t.lhs.first() == t.rhs))
        bad("not a right-neutrality instance");
      break;
    case RuleTag::AxGodementL:
    case RuleTag::AxGodementR: {
      if (!premiseCount(0)) break;
      bool proj = t.rule == RuleTag::AxGodementL;
      bool ok = t.lhs.kind() == Code::Kind::Comp &&
                t.lhs.first().isBasic(proj ? Basic::ProjL : Basic::ProjR) &&
                t.lhs.second().kind() == Code::Kind::Ind &&
                (proj ? t.lhs.second().first() : t.lhs.second().second()) == t.rhs;
      if (!ok) bad("not a projection equation instance");
      break;
    }
    case RuleTag::AxSP: {
      if (!premiseCount(0)) break;
      bool ok = t.lhs.kind() == Code::Kind::Ind && t.lhs.first().kind() == Code::Kind::Comp &&
                t.lhs.second().kind() == Code::Kind::Comp &&
                t.lhs.first().first().isBasic(Basic::ProjL) &&
                t.lhs.second().first().isBasic(Basic::ProjR) &&
                t.lhs.first().second() == t.rhs && t.lhs.second().second() == t.rhs;
      if (!ok) bad("not a surjective-pairing instance");
      break;
    }
    case RuleTag::AxDistr: {
      if (!premiseCount(0)) break;
      bool ok = t.lhs.kind() == Code::Kind::Comp && t.lhs.first().kind() == Code::Kind::Ind &&
                t.rhs.kind() == Code::Kind::Ind && t.rhs.first().kind() == Code::Kind::Comp &&
                t.rhs.second().kind() == Code::Kind::Comp &&
                t.rhs.first().first() == t.lhs.first().first() &&
                t.rhs.second().first() == t.lhs.first().second() &&
                t.rhs.first().second() == t.lhs.second() &&
                t.rhs.second().second() == t.lhs.second();
      if (!ok) bad("not a distributivity instance");
      break;
    }
    case RuleTag::AxIterAnchor: {
      if (!premiseCount(0)) break;
      bool ok = t.lhs.kind() == Code::Kind::Comp && t.lhs.first().kind() == Code::Kind::Iter &&
                t.lhs.second() == zeroInit() && t.rhs.isBasic(Basic::Id);
      if (!ok) bad("not an iteration anchor instance");
      break;
    }
    case RuleTag::AxIterStep: {
      if (!premiseCount(0)) break;
      bool ok = t.lhs.kind() == Code::Kind::Comp && t.lhs.first().kind() == Code::Kind::Iter &&
                t.lhs.second() == idSucc() && t.rhs.kind() == Code::Kind::Comp &&
                t.rhs.second().kind() == Code::Kind::Iter &&
                t.rhs.first() == t.lhs.first().first() &&
                t.rhs.second().first() == t.lhs.first().first();
      if (!ok) bad("not an iteration step instance");
      break;
    }
    case RuleTag::FreydUniq: {
      if (!premiseCount(2)) break;
      if (!(t.rhs.kind() == Code::Kind::Comp && t.rhs.first().kind() == Code::Kind::Iter &&
            t.rhs.second().kind() == Code::Kind::Prod &&
            t.rhs.second().second().isBasic(Basic::Id))) {
        bad("root right side must be (iter(v) o <u # id>)");
        break;
      }
      const Code& w = t.lhs;
      const Code& v = t.rhs.first().first();
      const Code& u = t.rhs.second().first();
      const DTree& anchor = t.premises[0];
      const DTree& stepPrem = t.premises[1];
      if (!(anchor.lhs == Code::comp(w, zeroInit()) && anchor.rhs == u))
        bad("anchor premise must equate (w o <id ; (zero o pi)>) with u");
      if (!(stepPrem.lhs == Code::comp(w, idSucc()) && stepPrem.rhs == Code::comp(v, w)))
        bad("step premise must equate (w o <id # s>) with (v o w)");
      break;
    }
  }

  for (std::size_t i = 0; i < t.premises.size(); ++i)
    checkNode(t.premises[i], path.empty() ? std::to_string(i) : path + "." + std::to_string(i),
              out);
}

}  // namespace detail

/// Verifies every node against its rule schema; an empty result means the
/// tree is a valid deduction.
inline std::vector<Violation> checkTree(const DTree& t) {
  std::vector<Violation> out;
  detail::checkNode(t, "", out);
  return out;
}

/// Verdict of evaluating an argumented deduction tree. A Sound verdict
/// records the two root evaluations; the soundness property is that they
/// are equal, which the search harness checks rather than assumes.
struct ArgVerdict {
  enum class Kind { Sound, Exhausted, IllArgumented };
  Kind kind = Kind::IllArgumented;
  XValue lhsValue;
  XValue rhsValue;
  std::uint64_t budgetSpent = 0;

  static ArgVerdict sound(XValue l, XValue r) {
    return {Kind::Sound, std::move(l), std::move(r), 0};
  }
  static ArgVerdict exhausted(std::uint64_t spent) {
    return {Kind::Exhausted, XValue::bottom(), XValue::bottom(), spent};
  }
  static ArgVerdict illArgumented() { return {}; }

  bool isSound() const { return kind == Kind::Sound; }
};

/// Evaluates a valid deduction tree on a concrete argument, spreading the
/// argument top-down: transitivity and the first-factor compatibilities
/// pass the argument through; the second-factor compatibility argues its
/// premise with the inner evaluation computed en route; the uniqueness
/// rule replays the induction from 0 up to the given iteration count.
/// Every sub-evaluation shares the one step budget m.
inline ArgVerdict evalTree(const DTree& t, const XValue& x, std::uint64_t m) {
  auto evalPremise = [&](const DTree& p, const XValue& arg,
                         ArgVerdict& failure) -> bool {
    ArgVerdict v = evalTree(p, arg, m);
    if (v.isSound()) return true;
    failure = v;
    return false;
  };

  ArgVerdict failure;
  switch (t.rule) {
    case RuleTag::Sym:
    case RuleTag::Trans:
    case RuleTag::CompatCompFirst:
    case RuleTag::CompatInd:
      for (const DTree& p : t.premises)
        if (!evalPremise(p, x, failure)) return failure;
      break;
    case RuleTag::CompatCompSecond: {
      EvalResult inner = eval(t.lhs.second(), x, m);
      if (!inner.ok()) return ArgVerdict::exhausted(m);
      if (!evalPremise(t.premises[0], *inner, failure)) return failure;
      break;
    }
    case RuleTag::FreydUniq: {
      if (!x.isPair() || !x.right().isNum()) return ArgVerdict::illArgumented();
      const XValue& y = x.left();
      std::uint64_t n = x.right().numValue();
      if (!evalPremise(t.premises[0], y, failure)) return failure;
      for (std::uint64_t k = 0; k < n; ++k)
        if (!evalPremise(t.premises[1], XValue::pair(y, XValue::num(k)), failure))
          return failure;
      break;
    }
    default:
      break;  // axiom leaves take no premises
  }

  EvalResult lv = eval(t.lhs, x, m);
  if (!lv.ok()) return ArgVerdict::exhausted(m);
  EvalResult rv = eval(t.rhs, x, m);
  if (!rv.ok()) return ArgVerdict::exhausted(m);
  return ArgVerdict::sound(*lv, *rv);
}

namespace detail {

inline std::vector<std::vector<Code>> codesBySize(std::size_t maxSize) {
  std::vector<std::vector<Code>> bySize(maxSize + 1);
  if (maxSize >= 1)
    for (Basic b : kAllBasics) bySize[1].push_back(Code::basic(b));
  for (std::size_t s = 2; s <= maxSize; ++s) {
    for (std::size_t i = 1; i + 1 < s; ++i) {
      std::size_t j = s - 1 - i;
      for (const Code& a : bySize[i])
        for (const Code& b : bySize[j]) {
          bySize[s].push_back(Code::comp(a, b));
          bySize[s].push_back(Code::ind(a, b));
          bySize[s].push_back(Code::prod(a, b));
        }
    }
    for (const Code& a : bySize[s - 1]) bySize[s].push_back(Code::iter(a));
  }
  return bySize;
}

/// Goal-directed enumeration: every valid tree with exactly `budget` nodes
/// whose root is the given equation, with freely chosen codes (transitivity
/// middles) of size at most maxCodeSize. Used where the root is forced by
/// an enclosing rule, so the root codes themselves are not size-checked.
inline void treesWithRoot(const Code& lhs, const Code& rhs, std::size_t budget,
                          const std::vector<std::vector<Code>>& codes,
                          std::vector<DTree>& out) {
  if (budget == 0) return;
  if (budget == 1) {
    for (int i = 0; i <= static_cast<int>(RuleTag::FreydUniq); ++i) {
      RuleTag rule = static_cast<RuleTag>(i);
      DTree candidate{lhs, rhs, rule, {}};
      switch (rule) {
        case RuleTag::Refl:
        case RuleTag::AxAssoc:
        case RuleTag::AxNeutralL:
        case RuleTag::AxNeutralR:
        case RuleTag::AxGodementL:
        case RuleTag::AxGodementR:
        case RuleTag::AxSP:
        case RuleTag::AxDistr:
        case RuleTag::AxIterAnchor:
        case RuleTag::AxIterStep:
          if (checkTree(candidate).empty()) out.push_back(std::move(candidate));
          break;
        default:
          break;
      }
    }
    return;
  }

  {  // symmetry
    std::vector<DTree> flipped;
    treesWithRoot(rhs, lhs, budget - 1, codes, flipped);
    for (auto& p : flipped) out.push_back({lhs, rhs, RuleTag::Sym, {std::move(p)}});
  }

  if (lhs.kind() == Code::Kind::Comp && rhs.kind() == Code::Kind::Comp) {
    if (lhs.first() == rhs.first()) {
      std::vector<DTree> inner;
      treesWithRoot(lhs.second(), rhs.second(), budget - 1, codes, inner);
      for (auto& p : inner)
        out.push_back({lhs, rhs, RuleTag::CompatCompFirst, {std::move(p)}});
    }
    if (lhs.second() == rhs.second()) {
      std::vector<DTree> outer;
      treesWithRoot(lhs.first(), rhs.first(), budget - 1, codes, outer);
      for (auto& p : outer)
        out.push_back({lhs, rhs, RuleTag::CompatCompSecond, {std::move(p)}});
    }
  }
  if (lhs.kind() == Code::Kind::Ind && rhs.kind() == Code::Kind::Ind) {
    if (lhs.second() == rhs.second()) {
      std::vector<DTree> prem;
      treesWithRoot(lhs.first(), rhs.first(), budget - 1, codes, prem);
      for (auto& p : prem) out.push_back({lhs, rhs, RuleTag::CompatInd, {std::move(p)}});
    }
    if (lhs.first() == rhs.first()) {
      std::vector<DTree> prem;
      treesWithRoot(lhs.second(), rhs.second(), budget - 1, codes, prem);
      for (auto& p : prem) out.push_back({lhs, rhs, RuleTag::CompatInd, {std::move(p)}});
    }
  }

  for (std::size_t i = 1; i + 1 < budget; ++i) {
    std::size_t j = budget - 1 - i;
    // transitivity over every admissible middle code
    for (const auto& group : codes)
      for (const Code& mid : group) {
        std::vector<DTree> first;
        treesWithRoot(lhs, mid, i, codes, first);
        if (first.empty()) continue;
        std::vector<DTree> second;
        treesWithRoot(mid, rhs, j, codes, second);
        for (const auto& a : first)
          for (const auto& b : second)
            out.push_back({lhs, rhs, RuleTag::Trans, {a, b}});
      }
    // uniqueness of the initialised iterate
    if (rhs.kind() == Code::Kind::Comp && rhs.first().kind() == Code::Kind::Iter &&
        rhs.second().kind() == Code::Kind::Prod && rhs.second().second().isBasic(Basic::Id)) {
      const Code& v = rhs.first().first();
      const Code& u = rhs.second().first();
      std::vector<DTree> anchors;
      treesWithRoot(Code::comp(lhs, zeroInit()), u, i, codes, anchors);
      if (!anchors.empty()) {
        std::vector<DTree> steps;
        treesWithRoot(Code::comp(lhs, idSucc()), Code::comp(v, lhs), j, codes, steps);
        for (const auto& a : anchors)
          for (const auto& b : steps)
            out.push_back({lhs, rhs, RuleTag::FreydUniq, {a, b}});
      }
    }
  }
}

}  // namespace detail

/// Every valid tree with at most maxNodes nodes whose codes fit the size
/// bound, each exactly once, ordered size-major and then by (rule, root
/// codes, premises). Deterministic across runs.
///
/// The size bound applies to every root equation in the tree except the
/// premises of a uniqueness node: their roots extend the (bounded) root
/// codes by the rule's fixed factors <id ; (zero o pi)> and <id # s>, and
/// counting that scaffolding would push any uniqueness instance beyond
/// tractable bounds. Freely chosen codes are always bounded.
inline std::vector<DTree> enumerateTrees(std::size_t maxNodes, std::size_t maxCodeSize) {
  auto codes = detail::codesBySize(maxCodeSize);
  auto codeFits = [&](const Code& c) { return c.size() <= maxCodeSize; };

  std::vector<std::vector<DTree>> byNodes(maxNodes + 1);

  // single-node trees: reflexivity and axiom instances
  if (maxNodes >= 1) {
    auto& pile = byNodes[1];
    const Code idC = Code::basic(Basic::Id);
    for (const auto& group : codes)
      for (const Code& u : group) {
        pile.push_back({u, u, RuleTag::Refl, {}});
        if (Code lhs = Code::comp(idC, u); codeFits(lhs))
          pile.push_back({lhs, u, RuleTag::AxNeutralL, {}});
        if (Code lhs = Code::comp(u, idC); codeFits(lhs))
          pile.push_back({lhs, u, RuleTag::AxNeutralR, {}});
        if (Code lhs = Code::comp(Code::iter(u), zeroInit()); codeFits(lhs))
          pile.push_back({lhs, idC, RuleTag::AxIterAnchor, {}});
        {
          Code lhs = Code::comp(Code::iter(u), idSucc());
          Code rhs = Code::comp(u, Code::iter(u));
          if (codeFits(lhs) && codeFits(rhs))
            pile.push_back({lhs, rhs, RuleTag::AxIterStep, {}});
        }
        Code sp = Code::ind(Code::comp(Code::basic(Basic::ProjL), u),
                            Code::comp(Code::basic(Basic::ProjR), u));
        if (codeFits(sp)) pile.push_back({sp, u, RuleTag::AxSP, {}});
      }
    // two-parameter axiom schemas, size-bucketed
    for (std::size_t su = 1; su + 4 <= maxCodeSize; ++su)
      for (const Code& u : codes[su])
        for (std::size_t sv = 1; su + sv + 3 <= maxCodeSize; ++sv)
          for (const Code& v : codes[sv]) {
            Code pairUV = Code::ind(u, v);
            pile.push_back(
                {Code::comp(Code::basic(Basic::ProjL), pairUV), u, RuleTag::AxGodementL, {}});
            pile.push_back(
                {Code::comp(Code::basic(Basic::ProjR), pairUV), v, RuleTag::AxGodementR, {}});
          }
    // three-parameter axiom schemas, size-bucketed
    for (std::size_t su = 1; su + 4 <= maxCodeSize; ++su)
      for (const Code& u : codes[su])
        for (std::size_t sv = 1; su + sv + 3 <= maxCodeSize; ++sv)
          for (const Code& v : codes[sv])
            for (std::size_t sh = 1; su + sv + sh + 2 <= maxCodeSize; ++sh)
              for (const Code& h : codes[sh]) {
                Code assocL = Code::comp(Code::comp(u, v), h);
                Code assocR = Code::comp(u, Code::comp(v, h));
                pile.push_back({assocL, assocR, RuleTag::AxAssoc, {}});
                Code distrL = Code::comp(Code::ind(u, v), h);
                Code distrR = Code::ind(Code::comp(u, h), Code::comp(v, h));
                if (codeFits(distrR))
                  pile.push_back({distrL, distrR, RuleTag::AxDistr, {}});
              }
  }

  for (std::size_t n = 2; n <= maxNodes; ++n) {
    auto& pile = byNodes[n];
    for (const DTree& p : byNodes[n - 1]) {
      pile.push_back({p.rhs, p.lhs, RuleTag::Sym, {p}});
      // compatibility frames, bucketed by what still fits beside the premise
      std::size_t premiseMax = std::max(p.lhs.size(), p.rhs.size());
      if (premiseMax + 2 <= maxCodeSize) {
        std::size_t room = maxCodeSize - 1 - premiseMax;
        for (std::size_t s = 1; s <= room; ++s)
          for (const Code& other : codes[s]) {
            pile.push_back({Code::comp(other, p.lhs), Code::comp(other, p.rhs),
                            RuleTag::CompatCompFirst, {p}});
            pile.push_back({Code::comp(p.lhs, other), Code::comp(p.rhs, other),
                            RuleTag::CompatCompSecond, {p}});
            pile.push_back(
                {Code::ind(p.lhs, other), Code::ind(p.rhs, other), RuleTag::CompatInd, {p}});
            pile.push_back(
                {Code::ind(other, p.lhs), Code::ind(other, p.rhs), RuleTag::CompatInd, {p}});
          }
      }
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      std::size_t j = n - 1 - i;
      // transitivity: join premise piles on the middle code
      std::multimap<std::string, const DTree*> byLhs;
      for (const DTree& b : byNodes[j]) byLhs.emplace(printCode(b.lhs), &b);
      for (const DTree& a : byNodes[i]) {
        auto [lo, hi] = byLhs.equal_range(printCode(a.rhs));
        for (auto it = lo; it != hi; ++it)
          pile.push_back({a.lhs, it->second->rhs, RuleTag::Trans, {a, *it->second}});
      }
    }
    // uniqueness of the initialised iterate: root codes bounded, premise
    // roots forced by the schema and enumerated goal-directed
    for (std::size_t i = 1; i + 1 < n; ++i) {
      std::size_t j = n - 1 - i;
      for (const auto& gw : codes)
        for (const Code& w : gw)
          for (std::size_t su = 1; su + 5 <= maxCodeSize; ++su)
            for (const Code& u : codes[su]) {
              std::vector<DTree> anchors;
              detail::treesWithRoot(Code::comp(w, zeroInit()), u, i, codes, anchors);
              if (anchors.empty()) continue;
              for (std::size_t sv = 1; su + sv + 4 <= maxCodeSize; ++sv)
                for (const Code& v : codes[sv]) {
                  std::vector<DTree> steps;
                  detail::treesWithRoot(Code::comp(w, idSucc()), Code::comp(v, w), j, codes,
                                        steps);
                  if (steps.empty()) continue;
                  Code rhs =
                      Code::comp(Code::iter(v), Code::prod(u, Code::basic(Basic::Id)));
                  for (const auto& a : anchors)
                    for (const auto& b : steps)
                      pile.push_back({w, rhs, RuleTag::FreydUniq, {a, b}});
                }
            }
    }
  }

  std::vector<DTree> out;
  for (std::size_t n = 1; n <= maxNodes; ++n) {
    auto& pile = byNodes[n];
    std::sort(pile.begin(), pile.end(),
              [](const DTree& a, const DTree& b) { return treeCompare(a, b) < 0; });
    pile.erase(std::unique(pile.begin(), pile.end()), pile.end());
    out.insert(out.end(), pile.begin(), pile.end());
  }
  return out;
}

// ---- proof file format ------------------------------------------------
//
// One tree per line (nesting allowed): (rule "LHS" "RHS" premise*) with
// the two codes quoted in surface syntax.

inline std::string printProof(const DTree& t) {
  std::string out = "(";
  out += ruleName(t.rule);
  out += " \"" + printCode(t.lhs) + "\" \"" + printCode(t.rhs) + "\"";
  for (const DTree& p : t.premises) out += " " + printProof(p);
  out += ")";
  return out;
}

namespace detail {

class ProofParser {
public:
  explicit ProofParser(const std::string& text) : text_(text) {}

  DTree parse() {
    DTree t = tree();
    skip();
    if (pos_ != text_.size()) fail("end of input");
    return t;
  }

private:
  DTree tree() {
    skip();
    expect('(');
    std::string name = atom();
    auto rule = ruleFromName(name);
    if (!rule) fail("a rule name");
    DTree t;
    t.rule = *rule;
    t.lhs = parseCode(quoted());
    t.rhs = parseCode(quoted());
    skip();
    while (pos_ < text_.size() && text_[pos_] == '(') {
      t.premises.push_back(tree());
      skip();
    }
    expect(')');
    return t;
  }

  std::string atom() {
    skip();
    std::string word;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')' && text_[pos_] != '"')
      word += text_[pos_++];
    if (word.empty()) fail("an atom");
    return word;
  }

  std::string quoted() {
    skip();
    expect('"');
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') out += text_[pos_++];
    expect('"');
    return out;
  }

  void expect(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("'") + c + "'");
    ++pos_;
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& expected) {
    throw SyntaxError(1, pos_ + 1, expected);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline DTree parseProof(const std::string& text) { return detail::ProofParser(text).parse(); }

// ---- soundness search ---------------------------------------------------

struct SearchMismatch {
  std::size_t treeIndex = 0;
  std::string proof;
  std::string argument;
  std::string lhsValue;
  std::string rhsValue;
};

/// Desk-scale verification record: every enumerated tree evaluated on
/// every sample argument. Soundness counterexamples and roots equating the
/// truth constants must both stay at zero.
struct SearchReport {
  std::size_t maxNodes = 0;
  std::size_t maxCodeSize = 0;
  std::uint64_t budget = 0;
  std::size_t argumentCount = 0;
  std::uint64_t trees = 0;
  std::uint64_t evaluations = 0;
  std::uint64_t sound = 0;
  std::uint64_t exhausted = 0;
  std::uint64_t illArgumented = 0;
  std::uint64_t mismatches = 0;
  std::uint64_t trueFalseRoots = 0;
  std::optional<SearchMismatch> firstMismatch;

  bool clean() const { return mismatches == 0 && trueFalseRoots == 0; }

  std::string summaryLine() const {
    std::ostringstream out;
    out << "summary: trees=" << trees << " evaluations=" << evaluations << " sound=" << sound
        << " exhausted=" << exhausted << " ill-argumented=" << illArgumented
        << " mismatches=" << mismatches << " true-false-roots=" << trueFalseRoots;
    return out.str();
  }

  std::string toText() const {
    std::ostringstream out;
    out << "soundness search\n"
        << "  max-nodes: " << maxNodes << "\n"
        << "  max-code-size: " << maxCodeSize << "\n"
        << "  budget: " << budget << "\n"
        << "  arguments: " << argumentCount << "\n"
        << "  trees: " << trees << "\n"
        << "  evaluations: " << evaluations << "\n"
        << "  sound: " << sound << "\n"
        << "  exhausted: " << exhausted << "\n"
        << "  ill-argumented: " << illArgumented << "\n"
        << "  soundness counterexamples: " << mismatches << "\n"
        << "  true/false roots: " << trueFalseRoots << "\n";
    if (firstMismatch) {
      out << "  first counterexample:\n"
          << "    tree " << firstMismatch->treeIndex << ": " << firstMismatch->proof << "\n"
          << "    argument: " << firstMismatch->argument << "\n"
          << "    values: " << firstMismatch->lhsValue << " vs " << firstMismatch->rhsValue
          << "\n";
    }
    out << summaryLine() << "\n";
    out << "status: " << (clean() ? "ok" : "counterexample") << "\n";
    return out.str();
  }

  std::string toSexp() const {
    std::ostringstream out;
    out << "(search-report (max-nodes " << maxNodes << ") (max-code-size " << maxCodeSize
        << ") (budget " << budget << ") (arguments " << argumentCount << ") (trees " << trees
        << ") (evaluations " << evaluations << ") (sound " << sound << ") (exhausted "
        << exhausted << ") (ill-argumented " << illArgumented << ") (mismatches " << mismatches
        << ") (true-false-roots " << trueFalseRoots << ")";
    if (firstMismatch) {
      out << " (first-counterexample (tree " << firstMismatch->treeIndex << ") (proof "
          << firstMismatch->proof << ") (argument \"" << firstMismatch->argument
          << "\") (lhs \"" << firstMismatch->lhsValue << "\") (rhs \""
          << firstMismatch->rhsValue << "\"))";
    }
    out << " (status " << (clean() ? "ok" : "counterexample") << "))";
    return out.str();
  }
};

/// Runs every enumerated tree on every sample argument and tallies the
/// verdicts. Also scans roots for an equation between the codes of the
/// truth constants, the desk-scale consistency question.
inline SearchReport soundnessSearch(std::size_t maxNodes, std::size_t maxCodeSize,
                                    const std::vector<XValue>& argSamples, std::uint64_t m) {
  static const Code trueCode = erase(stdlib("true").term);
  static const Code falseCode = erase(stdlib("false").term);

  SearchReport report;
  report.maxNodes = maxNodes;
  report.maxCodeSize = maxCodeSize;
  report.budget = m;
  report.argumentCount = argSamples.size();

  std::vector<DTree> trees = enumerateTrees(maxNodes, maxCodeSize);
  report.trees = trees.size();
  for (std::size_t ti = 0; ti < trees.size(); ++ti) {
    const DTree& t = trees[ti];
    bool equatesTruth = (t.lhs == trueCode && t.rhs == falseCode) ||
                        (t.lhs == falseCode && t.rhs == trueCode);
    if (equatesTruth) ++report.trueFalseRoots;
    for (const XValue& x : argSamples) {
      ++report.evaluations;
      ArgVerdict v = evalTree(t, x, m);
      switch (v.kind) {
        case ArgVerdict::Kind::Sound:
          ++report.sound;
          if (v.lhsValue != v.rhsValue) {
            ++report.mismatches;
            if (!report.firstMismatch)
              report.firstMismatch = SearchMismatch{ti, printProof(t), x.toString(),
                                                    v.lhsValue.toString(),
                                                    v.rhsValue.toString()};
          }
          break;
        case ArgVerdict::Kind::Exhausted:
          ++report.exhausted;
          break;
        case ArgVerdict::Kind::IllArgumented:
          ++report.illArgumented;
          break;
      }
    }
  }
  return report;
}

}  // namespace prm

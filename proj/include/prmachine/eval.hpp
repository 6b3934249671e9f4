#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "prmachine/code.hpp"
#include "prmachine/ordinal.hpp"
#include "prmachine/value.hpp"

namespace prm {

/// Complexity of a map code in the ordinal of omega-polynomials.
/// Identity costs nothing; every other basic symbol costs one; the three
/// binary formers add their parts plus one; an iterate lifts its body one
/// omega power, accounting for the unknown iteration count before code
/// expansion. Zero complexity characterises the identity code.
inline OrdPoly complexity(const Code& u) {
  switch (u.kind()) {
    case Code::Kind::Basic:
      return u.isBasic(Basic::Id) ? OrdPoly::zero() : OrdPoly::one();
    case Code::Kind::Comp:
    case Code::Kind::Ind:
    case Code::Kind::Prod:
      return complexity(u.first()) + complexity(u.second()) + OrdPoly::one();
    case Code::Kind::Iter:
      return (complexity(u.first()) + OrdPoly::one()).mulOmega();
  }
  return OrdPoly::zero();
}

/// One application of a basic map symbol. Regular clauses follow the
/// untyped monoid; every ill-shaped combination is trash, and trash
/// absorbs: a basic applied to bottom is bottom.
inline XValue applyBasic(Basic b, const XValue& x) {
  if (x.isBottom()) return XValue::bottom();
  switch (b) {
    case Basic::Id:
      return x;
    case Basic::Zero:
      return XValue::num(0);
    case Basic::Succ:
      return x.isNum() ? XValue::num(x.numValue() + 1) : XValue::bottom();
    case Basic::Pi:
      return XValue::num(0);
    case Basic::Delta:
      return XValue::pair(x, x);
    case Basic::ProjL:
      return x.isPair() ? x.left() : XValue::bottom();
    case Basic::ProjR:
      return x.isPair() ? x.right() : XValue::bottom();
  }
  return XValue::bottom();
}

/// Code expansion of an iterate body: u[0] = id, u[n+1] = (u o u[n]).
inline Code expand(const Code& u, std::uint64_t n) {
  Code acc = Code::basic(Basic::Id);
  for (std::uint64_t i = 0; i < n; ++i) acc = Code::comp(u, acc);
  return acc;
}

struct EvalState {
  Code code;
  XValue arg;

  friend bool operator==(const EvalState& a, const EvalState& b) {
    return a.code == b.code && a.arg == b.arg;
  }
  friend bool operator!=(const EvalState& a, const EvalState& b) { return !(a == b); }
};

/// The single evaluation step on a code/argument pair. Recursion runs on
/// the depth of the code; the identity state is a fixpoint.
inline EvalState step(const EvalState& s) {
  const Code& c = s.code;
  const XValue& x = s.arg;
  switch (c.kind()) {
    case Code::Kind::Basic:
      return {Code::basic(Basic::Id), applyBasic(c.basicSym(), x)};
    case Code::Kind::Comp: {
      const Code& v = c.first();
      const Code& u = c.second();
      if (u.isBasic()) return {v, applyBasic(u.basicSym(), x)};
      EvalState inner = step({u, x});
      return {Code::comp(v, inner.code), inner.arg};
    }
    case Code::Kind::Prod: {
      if (!x.isPair()) break;  // trash
      if (c.first().isBasic(Basic::Id) && c.second().isBasic(Basic::Id))
        return {Code::basic(Basic::Id), x};
      EvalState a = step({c.first(), x.left()});
      EvalState b = step({c.second(), x.right()});
      return {Code::prod(a.code, b.code), XValue::pair(a.arg, b.arg)};
    }
    case Code::Kind::Ind: {
      if (c.first().isBasic(Basic::Id) && c.second().isBasic(Basic::Id))
        return {Code::basic(Basic::Id), XValue::pair(x, x)};
      // Both components consume the same argument once; the remainder then
      // acts on the freshly split pair componentwise, i.e. as a product.
      // An induced remainder would re-duplicate at the <id ; id> terminator.
      EvalState a = step({c.first(), x});
      EvalState b = step({c.second(), x});
      return {Code::prod(a.code, b.code), XValue::pair(a.arg, b.arg)};
    }
    case Code::Kind::Iter: {
      if (x.isPair() && x.right().isNum())
        return {expand(c.first(), x.right().numValue()), x.left()};
      break;  // trash
    }
  }
  return {Code::basic(Basic::Id), XValue::bottom()};
}

struct Exhausted {
  std::uint64_t budget = 0;
  EvalState last;
};

struct EvalResult {
  std::optional<XValue> value;  // set iff evaluation finished
  std::optional<Exhausted> exhausted;

  bool ok() const { return value.has_value(); }
  const XValue& operator*() const { return *value; }
  const XValue* operator->() const { return &*value; }
};

/// Fuel-bounded while loop: iterate the step while complexity is positive,
/// at most m times. Positive complexity is equivalent to the code not
/// being the identity, so the loop tests the code shape instead of
/// recomputing the ordinal.
inline EvalResult eval(const Code& u, const XValue& x, std::uint64_t m) {
  EvalState s{u, x};
  for (std::uint64_t used = 0; !s.code.isBasic(Basic::Id); ++used) {
    if (used == m) return {std::nullopt, Exhausted{m, s}};
    s = step(s);
  }
  return {s.arg, std::nullopt};
}

struct DescentViolation : std::logic_error {
  explicit DescentViolation(std::uint64_t stepIndex_)
      : std::logic_error("complexity failed to descend at step " +
                         std::to_string(stepIndex_)),
        stepIndex(stepIndex_) {}
  std::uint64_t stepIndex;
};

struct Trace {
  std::vector<std::pair<EvalState, OrdPoly>> steps;
  bool exhausted = false;
};

/// Full step/complexity history. Checks both halves of the descent
/// invariant as it goes: positive complexity must strictly decrease, and
/// the zero-complexity end state must be a fixpoint. A violation is an
/// implementation bug, never a legal runtime outcome.
inline Trace trace(const Code& u, const XValue& x, std::uint64_t m) {
  Trace t;
  EvalState s{u, x};
  OrdPoly c = complexity(s.code);
  t.steps.emplace_back(s, c);
  for (std::uint64_t used = 0; !c.isZero(); ++used) {
    if (used == m) {
      t.exhausted = true;
      return t;
    }
    EvalState next = step(s);
    OrdPoly cNext = complexity(next.code);
    if (!(cNext < c)) throw DescentViolation(used + 1);
    s = std::move(next);
    c = std::move(cNext);
    t.steps.emplace_back(s, c);
  }
  if (!(step(s) == s)) throw DescentViolation(t.steps.size());
  return t;
}

}  // namespace prm

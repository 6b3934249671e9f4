#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "prmachine/denote.hpp"
#include "prmachine/ordinal.hpp"
#include "prmachine/stdlib.hpp"
#include "prmachine/term.hpp"

namespace prm {

/// Outcome of a budgeted computation. Defined values are stable under
/// budget increase; Undefined records the budget spent before giving up.
template <typename T>
struct PartialResult {
  std::optional<T> value;
  std::uint64_t budgetSpent = 0;

  static PartialResult defined(T v) { return {std::move(v), 0}; }
  static PartialResult undefined(std::uint64_t spent) { return {std::nullopt, spent}; }

  bool isDefined() const { return value.has_value(); }
  const T& operator*() const { return *value; }
};

/// Bounded minimisation: least n <= bound with phi(a, n) nonzero.
/// phi must be a predicate A x N -> N; a supplies the A component.
inline PartialResult<std::uint64_t> mu(const TypedTerm& phi, const TValue& a,
                                       std::uint64_t bound) {
  Signature sig = typecheck(phi);
  if (!sig.dom.isProd() || !sig.cod.isNat())
    throw TypeError("mu.predicate", "(A*N)->N", sig.dom.toString() + "->" + sig.cod.toString());
  if (!matchesType(a, sig.dom.left()))
    throw ShapeMismatch("mu argument does not match the predicate domain");
  for (std::uint64_t n = 0; n <= bound; ++n)
    if (denote(phi, TValue::pair(a, TValue::nat(n))).natValue() != 0)
      return PartialResult<std::uint64_t>::defined(n);
  return PartialResult<std::uint64_t>::undefined(bound + 1);
}

namespace detail {

inline void checkLoopTypes(const TypedTerm& chi, const TypedTerm& f, const TValue& a) {
  Signature sc = typecheck(chi);
  Signature sf = typecheck(f);
  if (!sc.cod.isNat())
    throw TypeError("while.control", "A->N", sc.dom.toString() + "->" + sc.cod.toString());
  if (!(sf.dom == sf.cod) || !(sf.dom == sc.dom))
    throw TypeError("while.step", sc.dom.toString() + "->" + sc.dom.toString(),
                    sf.dom.toString() + "->" + sf.cod.toString());
  if (!matchesType(a, sc.dom)) throw ShapeMismatch("while argument shape");
}

}  // namespace detail

/// Content-driven loop, dynamic form: apply f while chi holds, at most
/// bound times.
inline PartialResult<TValue> whileLoop(const TypedTerm& chi, const TypedTerm& f,
                                       const TValue& a, std::uint64_t bound) {
  detail::checkLoopTypes(chi, f, a);
  TValue cur = a;
  for (std::uint64_t used = 0; used <= bound; ++used) {
    if (denote(chi, cur).natValue() == 0) return PartialResult<TValue>::defined(cur);
    if (used == bound) break;
    cur = denote(f, cur);
  }
  return PartialResult<TValue>::undefined(bound + 1);
}

/// Static form of the same loop: the iterate composed with bounded
/// minimisation of the exit predicate not(chi . iter(f)). Must agree with
/// the dynamic form on every Defined case.
inline PartialResult<TValue> whileLoopStatic(const TypedTerm& chi, const TypedTerm& f,
                                             const TValue& a, std::uint64_t bound) {
  detail::checkLoopTypes(chi, f, a);
  TypedTerm exitPred =
      TypedTerm::comp(terms::logicalNot(), TypedTerm::comp(chi, TypedTerm::iter(f)));
  PartialResult<std::uint64_t> n = mu(exitPred, a, bound);
  if (!n.isDefined()) return PartialResult<TValue>::undefined(n.budgetSpent);
  return PartialResult<TValue>::defined(
      denote(TypedTerm::iter(f), TValue::pair(a, TValue::nat(*n))));
}

/// Data of a complexity-controlled iteration over states of type S.
template <typename S>
struct CciSpec {
  std::function<OrdPoly(const S&)> complexityFn;
  std::function<S(const S&)> stepFn;
};

template <typename S>
struct CciResult {
  enum class Status { Defined, Undefined, DescentViolation, StationarityViolation };
  Status status = Status::Undefined;
  std::optional<S> value;
  std::uint64_t stepsTaken = 0;

  bool isDefined() const { return status == Status::Defined; }
};

/// Runs a claimed complexity-controlled iteration, verifying the claim as
/// it goes: positive complexity must strictly descend at every step, and
/// zero complexity must be a fixpoint. A Defined result therefore always
/// comes with an observed strictly descending chain ending at zero.
template <typename S>
CciResult<S> cciRun(const CciSpec<S>& spec, const S& start, std::uint64_t bound) {
  using Result = CciResult<S>;
  S cur = start;
  OrdPoly c = spec.complexityFn(cur);
  std::uint64_t used = 0;
  while (!c.isZero()) {
    if (used == bound) return {Result::Status::Undefined, std::nullopt, used};
    S next = spec.stepFn(cur);
    OrdPoly cNext = spec.complexityFn(next);
    if (!(cNext < c)) return {Result::Status::DescentViolation, std::nullopt, used + 1};
    cur = std::move(next);
    c = std::move(cNext);
    ++used;
  }
  if (spec.stepFn(cur) != cur)
    return {Result::Status::StationarityViolation, std::nullopt, used};
  return {Result::Status::Defined, std::move(cur), used};
}

}  // namespace prm

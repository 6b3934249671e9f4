#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "prmachine/denote.hpp"
#include "prmachine/term.hpp"

namespace prm {

struct UnknownName : std::runtime_error {
  explicit UnknownName(const std::string& name)
      : std::runtime_error("unknown stdlib name: " + name) {}
};

namespace terms {

inline ObjType nn() { return ObjType::prod(ObjType::nat(), ObjType::nat()); }

/// k as a constant map D -> N.
inline TypedTerm constNat(const ObjType& dom, std::uint64_t k) {
  TypedTerm t = TypedTerm::comp(TypedTerm::zero(), TypedTerm::terminal(dom));
  for (std::uint64_t i = 0; i < k; ++i) t = TypedTerm::comp(TypedTerm::succ(), t);
  return t;
}

inline TypedTerm swapNN() {
  return TypedTerm::induced(TypedTerm::projR(ObjType::nat(), ObjType::nat()),
                            TypedTerm::projL(ObjType::nat(), ObjType::nat()));
}

/// f(x, y) as a term, for binary f and component maps x, y with a common domain.
inline TypedTerm apply2(const TypedTerm& f, const TypedTerm& x, const TypedTerm& y) {
  return TypedTerm::comp(f, TypedTerm::induced(x, y));
}

inline TypedTerm plus() { return TypedTerm::iter(TypedTerm::succ()); }

inline TypedTerm pred() {
  ObjType one = ObjType::unit();
  ObjType oneN = ObjType::prod(one, ObjType::nat());
  // counter selector ((*, n), b) -> n
  TypedTerm h = TypedTerm::comp(TypedTerm::projR(one, ObjType::nat()),
                                TypedTerm::projL(oneN, ObjType::nat()));
  TypedTerm f = desugarPr(TypedTerm::zero(), h);
  return TypedTerm::comp(
      f, TypedTerm::induced(TypedTerm::terminal(ObjType::nat()), TypedTerm::id(ObjType::nat())));
}

inline TypedTerm monus() { return TypedTerm::iter(pred()); }

inline TypedTerm one() { return TypedTerm::comp(TypedTerm::succ(), TypedTerm::zero()); }

inline TypedTerm logicalNot() {
  return TypedTerm::comp(
      monus(), TypedTerm::induced(TypedTerm::comp(one(), TypedTerm::terminal(ObjType::nat())),
                                  TypedTerm::id(ObjType::nat())));
}

inline TypedTerm sign() { return TypedTerm::comp(logicalNot(), logicalNot()); }

inline TypedTerm mult() {
  ObjType n = ObjType::nat();
  TypedTerm g = TypedTerm::comp(TypedTerm::zero(), TypedTerm::terminal(n));
  // step ((a, k), b) -> b + a
  TypedTerm outerL = TypedTerm::projL(nn(), n);
  TypedTerm h = apply2(plus(), TypedTerm::projR(nn(), n),
                       TypedTerm::comp(TypedTerm::projL(n, n), outerL));
  return desugarPr(g, h);
}

inline TypedTerm logicalAnd() { return TypedTerm::comp(sign(), mult()); }
inline TypedTerm logicalOr() { return TypedTerm::comp(sign(), plus()); }

inline TypedTerm leq() { return TypedTerm::comp(logicalNot(), monus()); }
inline TypedTerm geq() { return TypedTerm::comp(leq(), swapNN()); }
inline TypedTerm lt() { return TypedTerm::comp(sign(), TypedTerm::comp(monus(), swapNN())); }
inline TypedTerm eq() { return TypedTerm::comp(logicalAnd(), TypedTerm::induced(leq(), geq())); }

inline TypedTerm max() {
  return apply2(plus(), TypedTerm::projL(ObjType::nat(), ObjType::nat()),
                TypedTerm::comp(monus(), swapNN()));
}

inline TypedTerm min() {
  return TypedTerm::comp(
      monus(), TypedTerm::induced(TypedTerm::projL(ObjType::nat(), ObjType::nat()), monus()));
}

}  // namespace terms

/// Map definition by case distinction over natural-valued branches,
/// encoded arithmetically: g * sign(chi) + h * not(chi).
inline TypedTerm desugarIf(const TypedTerm& chi, const TypedTerm& g, const TypedTerm& h) {
  Signature sc = typecheck(chi);
  Signature sg = typecheck(g);
  Signature sh = typecheck(h);
  if (!(sc.cod == ObjType::nat()))
    throw TypeError("if.predicate", "N", sc.cod.toString());
  if (!(sg.dom == sc.dom) || !(sh.dom == sc.dom) || !(sg.cod == ObjType::nat()) ||
      !(sh.cod == ObjType::nat()))
    throw TypeError("if.branches", sc.dom.toString() + "->N",
                    sg.dom.toString() + "->" + sg.cod.toString());
  return terms::apply2(
      terms::plus(),
      terms::apply2(terms::mult(), g, TypedTerm::comp(terms::sign(), chi)),
      terms::apply2(terms::mult(), h, TypedTerm::comp(terms::logicalNot(), chi)));
}

namespace terms {

/// Largest c <= bound(d) with phi(d, c), else 0. phi: D x N -> N, bound: D -> N.
inline TypedTerm boundedMax(const ObjType& dom, const TypedTerm& phi, const TypedTerm& bound) {
  ObjType n = ObjType::nat();
  ObjType dn = ObjType::prod(dom, n);
  ObjType state = ObjType::prod(dn, n);  // ((d, k), best)
  TypedTerm dSel = TypedTerm::comp(TypedTerm::projL(dom, n), TypedTerm::projL(dn, n));
  TypedTerm kSel = TypedTerm::comp(TypedTerm::projR(dom, n), TypedTerm::projL(dn, n));
  TypedTerm bestSel = TypedTerm::projR(dn, n);
  TypedTerm candidate = TypedTerm::comp(TypedTerm::succ(), kSel);
  TypedTerm chi = TypedTerm::comp(phi, TypedTerm::induced(dSel, candidate));
  TypedTerm h = desugarIf(chi, candidate, bestSel);
  TypedTerm g = TypedTerm::comp(TypedTerm::zero(), TypedTerm::terminal(dom));
  TypedTerm f = desugarPr(g, h);
  return TypedTerm::comp(f, TypedTerm::induced(TypedTerm::id(dom), bound));
}

/// Conjunction of phi(d, m) over all m <= bound(d).
inline TypedTerm boundedAll(const ObjType& dom, const TypedTerm& phi, const TypedTerm& bound) {
  ObjType n = ObjType::nat();
  ObjType dn = ObjType::prod(dom, n);
  TypedTerm dSel = TypedTerm::comp(TypedTerm::projL(dom, n), TypedTerm::projL(dn, n));
  TypedTerm kSel = TypedTerm::comp(TypedTerm::projR(dom, n), TypedTerm::projL(dn, n));
  TypedTerm accSel = TypedTerm::projR(dn, n);
  TypedTerm next = TypedTerm::comp(phi, TypedTerm::induced(dSel, TypedTerm::comp(TypedTerm::succ(), kSel)));
  TypedTerm h = apply2(logicalAnd(), accSel, next);
  TypedTerm g = TypedTerm::comp(phi, TypedTerm::induced(TypedTerm::id(dom),
                                                        constNat(dom, 0)));
  TypedTerm f = desugarPr(g, h);
  return TypedTerm::comp(f, TypedTerm::induced(TypedTerm::id(dom), bound));
}

inline TypedTerm div() {
  ObjType n = ObjType::nat();
  ObjType d = nn();
  TypedTerm aSel = TypedTerm::comp(TypedTerm::projL(n, n), TypedTerm::projL(d, n));
  TypedTerm bSel = TypedTerm::comp(TypedTerm::projR(n, n), TypedTerm::projL(d, n));
  TypedTerm cSel = TypedTerm::projR(d, n);
  TypedTerm phi = apply2(leq(), apply2(mult(), bSel, cSel), aSel);
  return boundedMax(d, phi, TypedTerm::projL(n, n));
}

inline TypedTerm rem() {
  ObjType n = ObjType::nat();
  return apply2(monus(), TypedTerm::projL(n, n),
                apply2(mult(), div(), TypedTerm::projR(n, n)));
}

/// divides(a, b): a is a divisor of b.
inline TypedTerm divides() {
  ObjType d = nn();
  return apply2(eq(), TypedTerm::comp(rem(), swapNN()), constNat(d, 0));
}

inline TypedTerm gcd() {
  ObjType n = ObjType::nat();
  ObjType d = nn();
  TypedTerm aSel = TypedTerm::comp(TypedTerm::projL(n, n), TypedTerm::projL(d, n));
  TypedTerm bSel = TypedTerm::comp(TypedTerm::projR(n, n), TypedTerm::projL(d, n));
  TypedTerm cSel = TypedTerm::projR(d, n);
  TypedTerm phi = apply2(logicalAnd(), TypedTerm::comp(divides(), TypedTerm::induced(cSel, aSel)),
                         TypedTerm::comp(divides(), TypedTerm::induced(cSel, bSel)));
  // The search bound max(a,b) keeps the term total and is tight enough:
  // any common divisor of a and b is at most max(a,b) once one is nonzero.
  return boundedMax(d, phi, max());
}

inline TypedTerm isPrime() {
  ObjType n = ObjType::nat();
  ObjType d = n;  // the candidate p
  TypedTerm pSel = TypedTerm::projL(n, n);
  TypedTerm mSel = TypedTerm::projR(n, n);
  // m | p  implies  m = 1 or m = p
  TypedTerm premise = TypedTerm::comp(divides(), TypedTerm::induced(mSel, pSel));
  TypedTerm conclusion = apply2(logicalOr(), apply2(eq(), mSel, constNat(nn(), 1)),
                                apply2(eq(), mSel, pSel));
  TypedTerm implies = apply2(logicalOr(), TypedTerm::comp(logicalNot(), premise), conclusion);
  TypedTerm all = boundedAll(d, implies, TypedTerm::id(n));
  TypedTerm atLeastTwo = apply2(leq(), constNat(n, 2), TypedTerm::id(n));
  return apply2(logicalAnd(), atLeastTwo, all);
}

/// Least prime q with p < q <= 2p; the sentinel 2p+1 is returned when the
/// scan fails, which never happens on the prime orbit (Bertrand).
inline TypedTerm nextPrime() {
  ObjType n = ObjType::nat();
  ObjType dn = nn();  // (p, k); the recursion state is ((p, k), best)
  TypedTerm doubleP = TypedTerm::comp(plus(), TypedTerm::diag(n));
  TypedTerm sentinel = TypedTerm::comp(TypedTerm::succ(), doubleP);  // 2p + 1
  TypedTerm phi = apply2(logicalAnd(), TypedTerm::comp(isPrime(), TypedTerm::projR(n, n)), lt());
  TypedTerm pSel = TypedTerm::comp(TypedTerm::projL(n, n), TypedTerm::projL(dn, n));
  TypedTerm kSel = TypedTerm::comp(TypedTerm::projR(n, n), TypedTerm::projL(dn, n));
  TypedTerm bestSel = TypedTerm::projR(dn, n);
  TypedTerm candidate = TypedTerm::comp(TypedTerm::succ(), kSel);
  TypedTerm fresh = apply2(eq(), bestSel, TypedTerm::comp(sentinel, pSel));
  TypedTerm hit = TypedTerm::comp(phi, TypedTerm::induced(pSel, candidate));
  TypedTerm h = desugarIf(apply2(logicalAnd(), fresh, hit), candidate, bestSel);
  TypedTerm f = desugarPr(sentinel, h);
  return TypedTerm::comp(f, TypedTerm::induced(TypedTerm::id(n), doubleP));
}

inline TypedTerm primeCount() {
  ObjType n = ObjType::nat();
  return TypedTerm::comp(TypedTerm::iter(nextPrime()),
                         TypedTerm::induced(constNat(n, 2), TypedTerm::id(n)));
}

}  // namespace terms

struct StdlibEntry {
  std::string name;
  TypedTerm term;
  Signature sig;
  std::function<TValue(const TValue&)> oracle;
};

namespace detail {

inline std::uint64_t nativeIsPrime(std::uint64_t p) {
  if (p < 2) return 0;
  for (std::uint64_t m = 2; m * m <= p; ++m)
    if (p % m == 0) return 0;
  return 1;
}

inline std::uint64_t nativePrimeCount(std::uint64_t n) {
  std::uint64_t p = 2;
  for (std::uint64_t i = 0; i < n; ++i) {
    std::uint64_t q = p + 1;
    while (!nativeIsPrime(q)) ++q;
    p = q;
  }
  return p;
}

inline StdlibEntry unary(const std::string& name, TypedTerm term,
                         std::function<std::uint64_t(std::uint64_t)> f) {
  Signature sig = typecheck(term);
  return {name, std::move(term), sig,
          [f = std::move(f)](const TValue& v) { return TValue::nat(f(v.natValue())); }};
}

inline StdlibEntry binary(const std::string& name, TypedTerm term,
                          std::function<std::uint64_t(std::uint64_t, std::uint64_t)> f) {
  Signature sig = typecheck(term);
  return {name, std::move(term), sig, [f = std::move(f)](const TValue& v) {
            return TValue::nat(f(v.left().natValue(), v.right().natValue()));
          }};
}

inline StdlibEntry constant(const std::string& name, TypedTerm term, std::uint64_t k) {
  Signature sig = typecheck(term);
  return {name, std::move(term), sig, [k](const TValue&) { return TValue::nat(k); }};
}

}  // namespace detail

inline const std::vector<StdlibEntry>& stdlibEntries() {
  using U = std::uint64_t;
  static const std::vector<StdlibEntry> table = [] {
    std::vector<StdlibEntry> t;
    t.push_back(detail::binary("plus", terms::plus(), [](U a, U b) { return a + b; }));
    t.push_back(detail::binary("mult", terms::mult(), [](U a, U b) { return a * b; }));
    t.push_back(detail::binary("monus", terms::monus(), [](U a, U b) { return a > b ? a - b : 0; }));
    t.push_back(detail::unary("pred", terms::pred(), [](U a) { return a ? a - 1 : 0; }));
    t.push_back(detail::unary("sign", terms::sign(), [](U a) { return a ? 1 : 0; }));
    t.push_back(detail::unary("not", terms::logicalNot(), [](U a) { return a ? 0 : 1; }));
    t.push_back(detail::binary("and", terms::logicalAnd(), [](U a, U b) { return a && b ? 1 : 0; }));
    t.push_back(detail::binary("or", terms::logicalOr(), [](U a, U b) { return a || b ? 1 : 0; }));
    t.push_back(detail::binary("leq", terms::leq(), [](U a, U b) { return a <= b ? 1 : 0; }));
    t.push_back(detail::binary("lt", terms::lt(), [](U a, U b) { return a < b ? 1 : 0; }));
    t.push_back(detail::binary("eq", terms::eq(), [](U a, U b) { return a == b ? 1 : 0; }));
    t.push_back(detail::binary("max", terms::max(), [](U a, U b) { return a > b ? a : b; }));
    t.push_back(detail::binary("min", terms::min(), [](U a, U b) { return a < b ? a : b; }));
    t.push_back(detail::binary("div", terms::div(), [](U a, U b) { return b ? a / b : a; }));
    t.push_back(detail::binary("rem", terms::rem(), [](U a, U b) { return b ? a % b : a; }));
    t.push_back(detail::binary("divides", terms::divides(), [](U a, U b) -> U {
      return a ? (b % a == 0 ? 1 : 0) : (b == 0 ? 1 : 0);
    }));
    t.push_back(detail::binary("gcd", terms::gcd(), [](U a, U b) { return std::gcd(a, b); }));
    t.push_back(detail::unary("isPrime", terms::isPrime(), detail::nativeIsPrime));
    t.push_back(detail::unary("primeCount", terms::primeCount(), detail::nativePrimeCount));
    t.push_back(detail::constant("true", terms::one(), 1));
    t.push_back(detail::constant("false", TypedTerm::zero(), 0));
    return t;
  }();
  return table;
}

inline const StdlibEntry& stdlib(const std::string& name) {
  for (const auto& e : stdlibEntries())
    if (e.name == name) return e;
  throw UnknownName(name);
}

}  // namespace prm

#include "prmachine/eval.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "prmachine/denote.hpp"
#include "prmachine/godel.hpp"
#include "prmachine/stdlib.hpp"

using namespace prm;

namespace {

OrdPoly poly(std::initializer_list<unsigned long> coeffs) {
  std::vector<BigNat> v;
  for (unsigned long c : coeffs) v.emplace_back(c);
  return OrdPoly(std::move(v));
}

std::vector<Code> codesUpTo(std::size_t maxSize) {
  std::vector<std::vector<Code>> bySize(maxSize + 1);
  for (Basic b : kAllBasics) bySize[1].push_back(Code::basic(b));
  for (std::size_t s = 2; s <= maxSize; ++s) {
    for (std::size_t i = 1; i + 1 < s; ++i)
      for (const Code& a : bySize[i])
        for (const Code& b : bySize[s - 1 - i]) {
          bySize[s].push_back(Code::comp(a, b));
          bySize[s].push_back(Code::ind(a, b));
          bySize[s].push_back(Code::prod(a, b));
        }
    for (const Code& a : bySize[s - 1]) bySize[s].push_back(Code::iter(a));
  }
  std::vector<Code> all;
  for (const auto& g : bySize) all.insert(all.end(), g.begin(), g.end());
  return all;
}

std::vector<XValue> argsUpTo(std::size_t maxDepth, std::uint64_t maxNum, bool withBottom) {
  std::vector<XValue> all;
  if (withBottom) all.push_back(XValue::bottom());
  for (std::uint64_t n = 0; n <= maxNum; ++n) all.push_back(XValue::num(n));
  std::size_t firstRegular = withBottom ? 1 : 0;
  for (std::size_t d = 1; d <= maxDepth; ++d) {
    std::size_t levelEnd = all.size();
    for (std::size_t i = firstRegular; i < levelEnd; ++i)
      for (std::size_t j = firstRegular; j < levelEnd; ++j) {
        if (std::max(all[i].pairDepth(), all[j].pairDepth()) == d - 1)
          all.push_back(XValue::pair(all[i], all[j]));
      }
  }
  return all;
}

const Code kSucc = Code::basic(Basic::Succ);
const Code kId = Code::basic(Basic::Id);

}  // namespace

TEST_CASE("complexity spot values") {
  CHECK(complexity(kId) == OrdPoly::zero());
  for (Basic b : kAllBasics)
    if (b != Basic::Id) CHECK(complexity(Code::basic(b)) == OrdPoly::one());
  CHECK(complexity(Code::iter(kSucc)) == poly({0, 2}));
  CHECK(complexity(Code::comp(kSucc, Code::basic(Basic::Zero))) == poly({3}));
  CHECK(complexity(erase(stdlib("plus").term)) == poly({0, 2}));
}

TEST_CASE("basic application clauses") {
  CHECK(applyBasic(Basic::Succ, XValue::num(2)) == XValue::num(3));
  CHECK(applyBasic(Basic::ProjL, XValue::num(5)).isBottom());
  CHECK(applyBasic(Basic::Delta, XValue::num(1)) ==
        XValue::pair(XValue::num(1), XValue::num(1)));
  CHECK(applyBasic(Basic::Zero, XValue::pair(XValue::num(1), XValue::num(2))) == XValue::num(0));
  CHECK(applyBasic(Basic::Pi, XValue::pair(XValue::num(1), XValue::num(2))) == XValue::num(0));
  CHECK(applyBasic(Basic::Succ, XValue::pair(XValue::num(1), XValue::num(2))).isBottom());
  for (Basic b : kAllBasics) CHECK(applyBasic(b, XValue::bottom()).isBottom());
}

TEST_CASE("code expansion") {
  CHECK(expand(kSucc, 0) == kId);
  CHECK(expand(kSucc, 2) == Code::comp(kSucc, Code::comp(kSucc, kId)));
  for (std::uint64_t n = 0; n <= 10; ++n) {
    // c(u[n]) = n*c(u) + n for this expansion shape; strictly below the iterate
    OrdPoly expected = complexity(kSucc).natMul(n) + OrdPoly(static_cast<unsigned long>(n));
    CHECK(complexity(expand(kSucc, n)) == expected);
    CHECK(complexity(expand(kSucc, n)) < complexity(Code::iter(kSucc)));
  }
}

TEST_CASE("single step clauses") {
  EvalState s1 = step({Code::comp(kSucc, Code::basic(Basic::Zero)), XValue::num(9)});
  CHECK(s1.code == kSucc);
  CHECK(s1.arg == XValue::num(0));

  EvalState s2 = step({Code::iter(kSucc), XValue::pair(XValue::num(4), XValue::num(2))});
  CHECK(s2.code == Code::comp(kSucc, Code::comp(kSucc, kId)));
  CHECK(s2.arg == XValue::num(4));

  EvalState s3 = step({Code::prod(kSucc, kSucc), XValue::num(3)});
  CHECK(s3.code == kId);
  CHECK(s3.arg.isBottom());

  EvalState s4 = step({Code::ind(kId, kId), XValue::num(7)});
  CHECK(s4.code == kId);
  CHECK(s4.arg == XValue::pair(XValue::num(7), XValue::num(7)));
}

TEST_CASE("evaluation") {
  XValue x = XValue::pair(XValue::num(1), XValue::num(2));
  EvalResult r0 = eval(kId, x, 0);
  REQUIRE(r0.ok());
  CHECK(*r0 == x);

  EvalResult plus = eval(erase(stdlib("plus").term),
                         XValue::pair(XValue::num(2), XValue::num(3)), 64);
  REQUIRE(plus.ok());
  CHECK(*plus == XValue::num(5));

  EvalResult anchor = eval(Code::iter(kSucc), XValue::pair(XValue::num(4), XValue::num(0)), 8);
  REQUIRE(anchor.ok());
  CHECK(*anchor == XValue::num(4));

  EvalResult trash = eval(Code::basic(Basic::ProjL), XValue::num(3), 8);
  REQUIRE(trash.ok());
  CHECK(trash->isBottom());
}

TEST_CASE("exhaustion reports the residual state") {
  Code plus = erase(stdlib("plus").term);
  XValue arg = XValue::pair(XValue::num(2), XValue::num(3));
  EvalResult r = eval(plus, arg, 2);
  REQUIRE_FALSE(r.ok());
  CHECK(r.exhausted->budget == 2);
  // resuming from the residual state finishes the run
  EvalResult resumed = eval(r.exhausted->last.code, r.exhausted->last.arg, 64);
  REQUIRE(resumed.ok());
  CHECK(*resumed == XValue::num(5));
}

TEST_CASE("budget monotonicity") {
  Code plus = erase(stdlib("plus").term);
  for (std::uint64_t a = 0; a <= 3; ++a)
    for (std::uint64_t b = 0; b <= 3; ++b) {
      XValue arg = XValue::pair(XValue::num(a), XValue::num(b));
      std::uint64_t m = 0;
      while (!eval(plus, arg, m).ok()) ++m;
      XValue v = *eval(plus, arg, m);
      CHECK(*eval(plus, arg, m + 1) == v);
      CHECK(*eval(plus, arg, 2 * m + 13) == v);
    }
}

TEST_CASE("traces descend and finish at the identity") {
  Trace t = trace(Code::comp(kSucc, Code::basic(Basic::Zero)), XValue::num(0), 8);
  REQUIRE(t.steps.size() == 3);
  CHECK(t.steps[0].second == poly({3}));
  CHECK(t.steps[1].second == poly({1}));
  CHECK(t.steps[2].second == OrdPoly::zero());
  CHECK_FALSE(t.exhausted);
  CHECK(t.steps.back().first.code == kId);

  Trace idTrace = trace(kId, XValue::num(5), 8);
  CHECK(idTrace.steps.size() == 1);
  CHECK(idTrace.steps[0].second == OrdPoly::zero());

  Trace cut = trace(erase(stdlib("plus").term), XValue::pair(XValue::num(2), XValue::num(3)), 2);
  CHECK(cut.exhausted);
}

TEST_CASE("descent and stationarity over a small exhaustive universe") {
  auto codes = codesUpTo(4);
  auto args = argsUpTo(1, 2, true);
  for (const Code& u : codes) {
    OrdPoly c = complexity(u);
    for (const XValue& x : args) {
      EvalState next = step({u, x});
      if (c.isZero()) {
        CHECK(next == EvalState{u, x});
      } else {
        CHECK(complexity(next.code) < c);
      }
    }
  }
}

TEST_CASE("all small traces terminate within a generous budget") {
  auto codes = codesUpTo(4);
  auto args = argsUpTo(1, 2, false);
  for (const Code& u : codes)
    for (const XValue& x : args) {
      Trace t = trace(u, x, 100000);
      CHECK_FALSE(t.exhausted);
    }
}

TEST_CASE("every size-6 evaluation terminates") {
  // the operational shadow of non-infinite descent, at full example bounds
  auto codes = codesUpTo(6);
  auto args = argsUpTo(2, 3, false);
  std::uint64_t exhausted = 0;
  for (const Code& u : codes)
    for (const XValue& x : args)
      if (!eval(u, x, 100000).ok()) ++exhausted;
  CHECK(exhausted == 0);
}

TEST_CASE("trash absorbs through whole evaluations") {
  for (const Code& u : codesUpTo(3)) {
    EvalResult r = eval(u, XValue::bottom(), 100000);
    REQUIRE(r.ok());
    CHECK(r->isBottom());
  }
}

TEST_CASE("denotation oracle") {
  CHECK(denoteOnNats(TypedTerm::iter(TypedTerm::succ()), {4, 2}) == TValue::nat(6));
  TypedTerm transpose = TypedTerm::induced(TypedTerm::projR(ObjType::nat(), ObjType::nat()),
                                           TypedTerm::projL(ObjType::nat(), ObjType::nat()));
  CHECK(denoteOnNats(transpose, {1, 2}) == TValue::pair(TValue::nat(2), TValue::nat(1)));
  CHECK(denoteOnNats(stdlib("div").term, {7, 2}) == TValue::nat(3));
}

TEST_CASE("objectivity on a few stdlib entries") {
  std::vector<std::string> names = {"plus", "mult", "monus", "leq", "eq", "max", "min"};
  for (const auto& name : names) {
    const auto& entry = stdlib(name);
    for (std::uint64_t a = 0; a <= 4; ++a)
      for (std::uint64_t b = 0; b <= 4; ++b) {
        TValue args = TValue::pair(TValue::nat(a), TValue::nat(b));
        EvalResult got = eval(erase(entry.term), embedValue(args), 1000000);
        REQUIRE(got.ok());
        CHECK(*got == embedValue(denote(entry.term, args)));
      }
  }
}

TEST_CASE("dominated characterisation on small codes") {
  const std::uint64_t budget = 10000;
  auto codes = codesUpTo(3);
  auto args = argsUpTo(1, 2, false);

  for (const Code& u : codes) {
    for (const XValue& x : args) {
      // composition
      for (const Code& v : codes) {
        EvalResult whole = eval(Code::comp(v, u), x, budget);
        if (!whole.ok()) continue;
        EvalResult inner = eval(u, x, budget);
        REQUIRE(inner.ok());
        EvalResult outer = eval(v, *inner, budget);
        REQUIRE(outer.ok());
        CHECK(*whole == *outer);
      }
      // iteration anchor and step
      EvalResult anchor = eval(Code::iter(u), XValue::pair(x, XValue::num(0)), budget);
      if (anchor.ok()) CHECK(*anchor == x);
      for (std::uint64_t n = 0; n <= 2; ++n) {
        EvalResult lhs = eval(Code::iter(u), XValue::pair(x, XValue::num(n + 1)), budget);
        if (!lhs.ok()) continue;
        EvalResult prev = eval(Code::iter(u), XValue::pair(x, XValue::num(n)), budget);
        REQUIRE(prev.ok());
        EvalResult rhs = eval(u, *prev, budget);
        REQUIRE(rhs.ok());
        CHECK(*lhs == *rhs);
      }
    }
    // product and induced, on pair arguments
    for (const Code& v : codes)
      for (const XValue& x : args)
        for (const XValue& y : args) {
          EvalResult lhs = eval(Code::prod(u, v), XValue::pair(x, y), budget);
          if (lhs.ok()) {
            EvalResult a = eval(u, x, budget);
            EvalResult b = eval(v, y, budget);
            REQUIRE(a.ok());
            REQUIRE(b.ok());
            CHECK(*lhs == XValue::pair(*a, *b));
          }
          EvalResult ind = eval(Code::ind(u, v), x, budget);
          if (ind.ok()) {
            EvalResult a = eval(u, x, budget);
            EvalResult b = eval(v, x, budget);
            REQUIRE(a.ok());
            REQUIRE(b.ok());
            CHECK(*ind == XValue::pair(*a, *b));
          }
        }
  }
}

TEST_CASE("basic codes evaluate like their basic maps") {
  for (Basic b : kAllBasics)
    for (const XValue& x : argsUpTo(1, 2, true)) {
      EvalResult r = eval(Code::basic(b), x, 4);
      REQUIRE(r.ok());
      CHECK(*r == applyBasic(b, x));
    }
}

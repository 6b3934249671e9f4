#include "prmachine/stdlib.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "prmachine/denote.hpp"

using namespace prm;

namespace {

std::uint64_t run2(const std::string& name, std::uint64_t a, std::uint64_t b) {
  return denote(stdlib(name).term, TValue::pair(TValue::nat(a), TValue::nat(b))).natValue();
}

std::uint64_t run1(const std::string& name, std::uint64_t a) {
  return denote(stdlib(name).term, TValue::nat(a)).natValue();
}

}  // namespace

TEST_CASE("unknown names are rejected") {
  CHECK_THROWS_AS(stdlib("frobnicate"), UnknownName);
}

TEST_CASE("truncated subtraction spot values") {
  CHECK(run2("monus", 5, 3) == 2);
  CHECK(run2("monus", 3, 5) == 0);
}

TEST_CASE("gcd and division spot values") {
  CHECK(run2("gcd", 12, 18) == 6);
  CHECK(run2("div", 7, 2) == 3);
}

TEST_CASE("primality pattern with 0 and 1 non-prime") {
  std::vector<std::uint64_t> expected = {0, 0, 1, 1, 0, 1, 0, 1, 0, 0, 0,
                                         1, 0, 1, 0, 0, 0, 1, 0, 1, 0};
  for (std::uint64_t p = 0; p <= 20; ++p) CHECK(run1("isPrime", p) == expected[p]);
}

TEST_CASE("prime enumeration starts 2, 3, 5, 7, 11, 13") {
  std::vector<std::uint64_t> expected = {2, 3, 5, 7, 11, 13};
  for (std::uint64_t n = 0; n < expected.size(); ++n)
    CHECK(run1("primeCount", n) == expected[n]);
}

TEST_CASE("every entry agrees with its native oracle on a grid") {
  for (const auto& e : stdlibEntries()) {
    if (e.sig.dom.isUnit()) {
      TValue u = TValue::unit();
      CHECK(denote(e.term, u) == e.oracle(u));
      continue;
    }
    if (e.sig.dom.isNat()) {
      std::uint64_t hi = e.name == "primeCount" ? 4 : 12;
      for (std::uint64_t a = 0; a <= hi; ++a) {
        TValue v = TValue::nat(a);
        CHECK(denote(e.term, v) == e.oracle(v));
      }
      continue;
    }
    std::uint64_t hi = (e.name == "gcd" || e.name == "div" || e.name == "rem" ||
                        e.name == "divides")
                           ? 8
                           : 10;
    for (std::uint64_t a = 0; a <= hi; ++a)
      for (std::uint64_t b = 0; b <= hi; ++b) {
        TValue v = TValue::pair(TValue::nat(a), TValue::nat(b));
        CHECK(denote(e.term, v) == e.oracle(v));
      }
  }
}

TEST_CASE("arithmetic laws") {
  for (std::uint64_t a = 0; a <= 12; ++a)
    for (std::uint64_t b = 0; b <= 12; ++b) {
      CHECK(run2("plus", a, b) == run2("plus", b, a));
      CHECK(run2("mult", a, b) == run2("mult", b, a));
      CHECK(run2("max", a, b) == run2("max", b, a));
      CHECK(run2("monus", a, a) == 0);
      CHECK(run2("monus", a + b, b) == a);
      for (std::uint64_t c = 0; c <= 12; c += 3) {
        CHECK(run2("plus", run2("plus", a, b), c) == run2("plus", a, run2("plus", b, c)));
        CHECK(run2("mult", run2("mult", a, b), c) == run2("mult", a, run2("mult", b, c)));
        CHECK(run2("mult", a, run2("plus", b, c)) ==
              run2("plus", run2("mult", a, b), run2("mult", a, c)));
      }
    }
}

TEST_CASE("strict order, equality and trichotomy") {
  for (std::uint64_t a = 0; a <= 20; ++a)
    for (std::uint64_t b = 0; b <= 20; ++b) {
      std::uint64_t lt = run2("lt", a, b);
      std::uint64_t eq = run2("eq", a, b);
      std::uint64_t gt = run2("lt", b, a);
      CHECK(lt + eq + gt == 1);  // exactly one holds
      CHECK(lt == (a < b ? 1 : 0));
      CHECK(eq == (a == b ? 1 : 0));
      CHECK(run2("leq", a, b) == (a <= b ? 1 : 0));
    }
}

TEST_CASE("predicative equality is substitutive") {
  std::vector<std::string> unary = {"pred", "sign", "not", "isPrime"};
  for (const auto& name : unary) {
    const auto& entry = stdlib(name);
    for (std::uint64_t a = 0; a <= 12; ++a)
      for (std::uint64_t a2 = 0; a2 <= 12; ++a2) {
        if (run2("eq", a, a2) != 1) continue;
        std::uint64_t fa = denote(entry.term, TValue::nat(a)).natValue();
        std::uint64_t fa2 = denote(entry.term, TValue::nat(a2)).natValue();
        CHECK(run2("eq", fa, fa2) == 1);
      }
  }
  // binary entries, applied to componentwise equal pairs
  std::vector<std::string> binary = {"plus", "mult", "monus", "max", "min", "div", "rem", "gcd"};
  for (const auto& name : binary) {
    const auto& entry = stdlib(name);
    for (std::uint64_t a = 0; a <= 8; ++a)
      for (std::uint64_t b = 0; b <= 8; ++b) {
        std::uint64_t f1 =
            denote(entry.term, TValue::pair(TValue::nat(a), TValue::nat(b))).natValue();
        std::uint64_t f2 =
            denote(entry.term, TValue::pair(TValue::nat(a), TValue::nat(b))).natValue();
        CHECK(run2("eq", f1, f2) == 1);
      }
  }
}

TEST_CASE("logical connectives are sign-valued") {
  for (std::uint64_t a = 0; a <= 6; ++a) {
    CHECK(run1("sign", a) == (a ? 1 : 0));
    CHECK(run1("not", a) == (a ? 0 : 1));
    for (std::uint64_t b = 0; b <= 6; ++b) {
      CHECK(run2("and", a, b) == ((a && b) ? 1 : 0));
      CHECK(run2("or", a, b) == ((a || b) ? 1 : 0));
    }
  }
}

TEST_CASE("truth constants") {
  CHECK(denote(stdlib("true").term, TValue::unit()) == TValue::nat(1));
  CHECK(denote(stdlib("false").term, TValue::unit()) == TValue::nat(0));
}

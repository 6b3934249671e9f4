#include "prmachine/surface.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "prmachine/denote.hpp"
#include "prmachine/stdlib.hpp"

using namespace prm;

TEST_CASE("parsing basic forms") {
  CHECK(parseTerm("(s o zero)") == TypedTerm::comp(TypedTerm::succ(), TypedTerm::zero()));
  CHECK(parseTerm("iter(s)") == TypedTerm::iter(TypedTerm::succ()));
  CHECK(parseTerm("<l ; r>") ==
        TypedTerm::induced(TypedTerm::projL(ObjType::nat(), ObjType::nat()),
                           TypedTerm::projR(ObjType::nat(), ObjType::nat())));
}

TEST_CASE("printing basic forms") {
  CHECK(printTerm(TypedTerm::comp(TypedTerm::succ(), TypedTerm::zero())) == "(s o zero)");
  CHECK(printTerm(TypedTerm::iter(TypedTerm::succ())) == "iter(s)");
  CHECK(printTerm(TypedTerm::prod(TypedTerm::id(ObjType::nat()), TypedTerm::succ())) ==
        "<id # s>");
}

TEST_CASE("ascriptions round trip") {
  ObjType nn = terms::nn();
  ObjType big = ObjType::prod(nn, ObjType::nat());
  TypedTerm t = TypedTerm::comp(TypedTerm::projR(nn, ObjType::nat()),
                                TypedTerm::id(big));
  std::string text = printTerm(t);
  CHECK(text == "(r:((N*N)*N) o id:((N*N)*N))");
  CHECK(parseTerm(text) == t);

  CHECK(parseTerm("pi:1") == TypedTerm::terminal(ObjType::unit()));
  CHECK(parseTerm("delta:(N*1)") == TypedTerm::diag(ObjType::prod(ObjType::nat(), ObjType::unit())));
}

TEST_CASE("every stdlib term survives a print/parse round trip") {
  for (const auto& e : stdlibEntries()) {
    CAPTURE(e.name);
    CHECK(parseTerm(printTerm(e.term)) == e.term);
  }
}

TEST_CASE("codes round trip through the printer") {
  std::vector<std::vector<Code>> bySize(5);
  for (Basic b : kAllBasics) bySize[1].push_back(Code::basic(b));
  for (std::size_t s = 2; s <= 4; ++s) {
    for (std::size_t i = 1; i + 1 < s; ++i)
      for (const Code& a : bySize[i])
        for (const Code& b : bySize[s - 1 - i]) {
          bySize[s].push_back(Code::comp(a, b));
          bySize[s].push_back(Code::ind(a, b));
          bySize[s].push_back(Code::prod(a, b));
        }
    for (const Code& a : bySize[s - 1]) bySize[s].push_back(Code::iter(a));
  }
  for (const auto& group : bySize)
    for (const Code& c : group) CHECK(parseCode(printCode(c)) == c);
}

TEST_CASE("code mode ignores ascriptions and stdlib references erase") {
  CHECK(parseCode("id:(N*N)") == Code::basic(Basic::Id));
  CHECK(parseCode("@plus") == erase(stdlib("plus").term));
  CHECK(parseCode("@plus") == Code::iter(Code::basic(Basic::Succ)));
}

TEST_CASE("pr and if desugar on parse") {
  TypedTerm viaParse = parseTerm("pr(id, (s o r:((N*N)*N)))");
  for (std::uint64_t a = 0; a <= 6; ++a)
    for (std::uint64_t n = 0; n <= 6; ++n)
      CHECK(denote(viaParse, TValue::pair(TValue::nat(a), TValue::nat(n))) ==
            TValue::nat(a + n));

  Code codeForm = parseCode("pr(id, (s o r))");
  CHECK(codeForm == desugarPrCode(Code::basic(Basic::Id),
                                  Code::comp(Code::basic(Basic::Succ), Code::basic(Basic::ProjR))));
}

TEST_CASE("syntax errors carry position and expectation") {
  try {
    parseTerm("(s o");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 1);
    CHECK(e.column == 5);
  }
  CHECK_THROWS_AS(parseTerm("frobnicate"), SyntaxError);
  CHECK_THROWS_AS(parseTerm("(s o zero) trailing"), SyntaxError);
  CHECK_THROWS_AS(parseTerm("<l , r>"), SyntaxError);
}

TEST_CASE("monoidal induced printing stays parseable and equivalent") {
  TypedTerm t = TypedTerm::induced(TypedTerm::succ(), terms::pred());
  std::string monoidal = printTerm(t, true);
  CHECK(monoidal.find('#') != std::string::npos);
  TypedTerm back = parseTerm(monoidal);
  CHECK(typecheck(back) == typecheck(t));
  for (std::uint64_t a = 0; a <= 8; ++a)
    CHECK(denote(back, TValue::nat(a)) == denote(t, TValue::nat(a)));
}

TEST_CASE("value literals") {
  CHECK(parseValue("7") == XValue::num(7));
  CHECK(parseValue("bot").isBottom());
  CHECK(parseValue("(3,(1,2))") ==
        XValue::pair(XValue::num(3), XValue::pair(XValue::num(1), XValue::num(2))));
  CHECK(printValue(parseValue("(3,0)")) == "(3,0)");
  CHECK_THROWS_AS(parseValue("(bot,1)"), SyntaxError);
  CHECK_THROWS_AS(parseValue("(1,2"), SyntaxError);
  CHECK_THROWS_AS(parseValue("12 34"), SyntaxError);
}

#pragma once

#include <cctype>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "prmachine/code.hpp"
#include "prmachine/stdlib.hpp"
#include "prmachine/term.hpp"
#include "prmachine/value.hpp"

namespace prm {

struct SyntaxError : std::runtime_error {
  SyntaxError(std::size_t line_, std::size_t column_, std::string expected_)
      : std::runtime_error("syntax error at " + std::to_string(line_) + ":" +
                           std::to_string(column_) + ": expected " + expected_),
        line(line_),
        column(column_),
        expected(std::move(expected_)) {}

  std::size_t line;
  std::size_t column;
  std::string expected;
};

namespace surface {

struct Token {
  enum class Kind { Ident, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  char punct = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    throw SyntaxError(tok_.line, tok_.column, expected);
  }

private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) bump();
    tok_ = Token{};
    tok_.line = line_;
    tok_.column = col_;
    if (pos_ >= text_.size()) {
      tok_.kind = Token::Kind::End;
      tok_.text = "end of input";
      return;
    }
    char c = text_[pos_];
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        word += text_[pos_];
        bump();
      }
      tok_.kind = Token::Kind::Ident;
      tok_.text = word;
      return;
    }
    static const std::string puncts = "()<>;#,:*@";
    if (puncts.find(c) != std::string::npos) {
      tok_.kind = Token::Kind::Punct;
      tok_.punct = c;
      tok_.text = std::string(1, c);
      bump();
      return;
    }
    throw SyntaxError(line_, col_, "a term symbol");
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  Token tok_;
};

/// Parse tree of the shared term grammar, before elaboration into a typed
/// term or an untyped code.
struct STerm {
  enum class Kind { Basic, Comp, Ind, Prod, Iter, Pr, If, Stdlib };
  Kind kind = Kind::Basic;
  Basic basic = Basic::Id;
  std::optional<ObjType> ascription;
  std::string name;  // stdlib reference
  std::vector<STerm> kids;
};

class Parser {
public:
  explicit Parser(const std::string& text) : lex_(text) {}

  STerm parseTermToEnd() {
    STerm t = term();
    expectEnd();
    return t;
  }

  ObjType parseTypeToEnd() {
    ObjType t = type();
    expectEnd();
    return t;
  }

private:
  STerm term() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::Punct) {
      switch (t.punct) {
        case '(': {
          lex_.next();
          STerm after = term();
          expectIdent("o");
          STerm before = term();
          expectPunct(')');
          STerm r;
          r.kind = STerm::Kind::Comp;
          r.kids = {std::move(after), std::move(before)};
          return r;
        }
        case '<': {
          lex_.next();
          STerm a = term();
          const Token& sep = lex_.peek();
          if (sep.kind != Token::Kind::Punct || (sep.punct != ';' && sep.punct != '#'))
            lex_.fail("';' or '#'");
          char op = lex_.next().punct;
          STerm b = term();
          expectPunct('>');
          STerm r;
          r.kind = op == ';' ? STerm::Kind::Ind : STerm::Kind::Prod;
          r.kids = {std::move(a), std::move(b)};
          return r;
        }
        case '@': {
          lex_.next();
          const Token& name = lex_.peek();
          if (name.kind != Token::Kind::Ident) lex_.fail("a stdlib name");
          STerm r;
          r.kind = STerm::Kind::Stdlib;
          r.name = lex_.next().text;
          return r;
        }
        default:
          lex_.fail("a term");
      }
    }
    if (t.kind != Token::Kind::Ident) lex_.fail("a term");
    std::string word = lex_.next().text;
    if (word == "iter" || word == "pr" || word == "if") {
      expectPunct('(');
      STerm r;
      r.kids.push_back(term());
      if (word == "iter") {
        r.kind = STerm::Kind::Iter;
      } else {
        expectPunct(',');
        r.kids.push_back(term());
        r.kind = STerm::Kind::Pr;
        if (word == "if") {
          expectPunct(',');
          r.kids.push_back(term());
          r.kind = STerm::Kind::If;
        }
      }
      expectPunct(')');
      return r;
    }
    STerm r;
    r.kind = STerm::Kind::Basic;
    if (word == "id") r.basic = Basic::Id;
    else if (word == "zero") r.basic = Basic::Zero;
    else if (word == "s") r.basic = Basic::Succ;
    else if (word == "pi") r.basic = Basic::Pi;
    else if (word == "delta") r.basic = Basic::Delta;
    else if (word == "l") r.basic = Basic::ProjL;
    else if (word == "r") r.basic = Basic::ProjR;
    else lex_.fail("a basic map name");
    if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().punct == ':') {
      lex_.next();
      r.ascription = type();
    }
    return r;
  }

  ObjType type() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::Ident && t.text == "1") {
      lex_.next();
      return ObjType::unit();
    }
    if (t.kind == Token::Kind::Ident && t.text == "N") {
      lex_.next();
      return ObjType::nat();
    }
    if (t.kind == Token::Kind::Punct && t.punct == '(') {
      lex_.next();
      ObjType a = type();
      expectPunct('*');
      ObjType b = type();
      expectPunct(')');
      return ObjType::prod(a, b);
    }
    lex_.fail("an object type");
  }

  void expectPunct(char c) {
    if (lex_.peek().kind != Token::Kind::Punct || lex_.peek().punct != c)
      lex_.fail(std::string("'") + c + "'");
    lex_.next();
  }

  void expectIdent(const std::string& word) {
    if (lex_.peek().kind != Token::Kind::Ident || lex_.peek().text != word)
      lex_.fail("'" + word + "'");
    lex_.next();
  }

  void expectEnd() {
    if (lex_.peek().kind != Token::Kind::End) lex_.fail("end of input");
  }

  Lexer lex_;
};

inline TypedTerm elaborateTyped(const STerm& t) {
  switch (t.kind) {
    case STerm::Kind::Basic: {
      ObjType a = t.ascription.value_or(ObjType::nat());
      switch (t.basic) {
        case Basic::Id: return TypedTerm::id(a);
        case Basic::Zero: return TypedTerm::zero();
        case Basic::Succ: return TypedTerm::succ();
        case Basic::Pi: return TypedTerm::terminal(a);
        case Basic::Delta: return TypedTerm::diag(a);
        case Basic::ProjL:
        case Basic::ProjR: {
          ObjType dom = t.ascription.value_or(terms::nn());
          if (!dom.isProd())
            throw TypeError("projection ascription", "a product type", dom.toString());
          return t.basic == Basic::ProjL ? TypedTerm::projL(dom.left(), dom.right())
                                         : TypedTerm::projR(dom.left(), dom.right());
        }
      }
      return TypedTerm::succ();
    }
    case STerm::Kind::Comp:
      return TypedTerm::comp(elaborateTyped(t.kids[0]), elaborateTyped(t.kids[1]));
    case STerm::Kind::Ind:
      return TypedTerm::induced(elaborateTyped(t.kids[0]), elaborateTyped(t.kids[1]));
    case STerm::Kind::Prod:
      return TypedTerm::prod(elaborateTyped(t.kids[0]), elaborateTyped(t.kids[1]));
    case STerm::Kind::Iter:
      return TypedTerm::iter(elaborateTyped(t.kids[0]));
    case STerm::Kind::Pr:
      return desugarPr(elaborateTyped(t.kids[0]), elaborateTyped(t.kids[1]));
    case STerm::Kind::If:
      return desugarIf(elaborateTyped(t.kids[0]), elaborateTyped(t.kids[1]),
                       elaborateTyped(t.kids[2]));
    case STerm::Kind::Stdlib:
      return stdlib(t.name).term;
  }
  throw std::logic_error("unreachable");
}

/// Case distinction at the code level, mirroring the typed encoding.
inline Code ifCode(const Code& chi, const Code& g, const Code& h) {
  static const Code plusC = erase(terms::plus());
  static const Code multC = erase(terms::mult());
  static const Code signC = erase(terms::sign());
  static const Code notC = erase(terms::logicalNot());
  return Code::comp(plusC,
                    Code::ind(Code::comp(multC, Code::ind(g, Code::comp(signC, chi))),
                              Code::comp(multC, Code::ind(h, Code::comp(notC, chi)))));
}

inline Code elaborateCode(const STerm& t) {
  switch (t.kind) {
    case STerm::Kind::Basic:
      return Code::basic(t.basic);  // ascriptions are ignored in code mode
    case STerm::Kind::Comp:
      return Code::comp(elaborateCode(t.kids[0]), elaborateCode(t.kids[1]));
    case STerm::Kind::Ind:
      return Code::ind(elaborateCode(t.kids[0]), elaborateCode(t.kids[1]));
    case STerm::Kind::Prod:
      return Code::prod(elaborateCode(t.kids[0]), elaborateCode(t.kids[1]));
    case STerm::Kind::Iter:
      return Code::iter(elaborateCode(t.kids[0]));
    case STerm::Kind::Pr:
      return desugarPrCode(elaborateCode(t.kids[0]), elaborateCode(t.kids[1]));
    case STerm::Kind::If:
      return ifCode(elaborateCode(t.kids[0]), elaborateCode(t.kids[1]),
                    elaborateCode(t.kids[2]));
    case STerm::Kind::Stdlib:
      return erase(stdlib(t.name).term);
  }
  throw std::logic_error("unreachable");
}

}  // namespace surface

inline TypedTerm parseTerm(const std::string& text) {
  surface::Parser p(text);
  return surface::elaborateTyped(p.parseTermToEnd());
}

inline Code parseCode(const std::string& text) {
  surface::Parser p(text);
  return surface::elaborateCode(p.parseTermToEnd());
}

inline ObjType parseType(const std::string& text) {
  surface::Parser p(text);
  return p.parseTypeToEnd();
}

inline std::string printCode(const Code& c) {
  switch (c.kind()) {
    case Code::Kind::Basic: return basicName(c.basicSym());
    case Code::Kind::Comp:
      return "(" + printCode(c.first()) + " o " + printCode(c.second()) + ")";
    case Code::Kind::Ind:
      return "<" + printCode(c.first()) + " ; " + printCode(c.second()) + ">";
    case Code::Kind::Prod:
      return "<" + printCode(c.first()) + " # " + printCode(c.second()) + ">";
    case Code::Kind::Iter:
      return "iter(" + printCode(c.first()) + ")";
  }
  return "?";
}

namespace surface {

inline std::string ascribe(const char* name, const ObjType& actual, const ObjType& dflt) {
  if (actual == dflt) return name;
  return std::string(name) + ":" + actual.toString();
}

}  // namespace surface

/// Canonical text, inverse of parseTerm. Ascriptions appear exactly when a
/// constant's object parameters differ from the defaults (N, or N*N for
/// projections). With monoidalInduced, induced maps print in the derived
/// form ((f # g) o delta) instead of <f ; g>.
inline std::string printTerm(const TypedTerm& t, bool monoidalInduced = false) {
  using Kind = TypedTerm::Kind;
  switch (t.kind()) {
    case Kind::Id: return surface::ascribe("id", t.typeA(), ObjType::nat());
    case Kind::Zero: return "zero";
    case Kind::Succ: return "s";
    case Kind::Terminal: return surface::ascribe("pi", t.typeA(), ObjType::nat());
    case Kind::Diag: return surface::ascribe("delta", t.typeA(), ObjType::nat());
    case Kind::ProjL: return surface::ascribe("l", t.typeA(), terms::nn());
    case Kind::ProjR: return surface::ascribe("r", t.typeA(), terms::nn());
    case Kind::Comp:
      return "(" + printTerm(t.first(), monoidalInduced) + " o " +
             printTerm(t.second(), monoidalInduced) + ")";
    case Kind::Induced:
      if (monoidalInduced) {
        ObjType dom = typecheck(t).dom;
        return "(<" + printTerm(t.first(), true) + " # " + printTerm(t.second(), true) +
               "> o " + surface::ascribe("delta", dom, ObjType::nat()) + ")";
      }
      return "<" + printTerm(t.first(), monoidalInduced) + " ; " +
             printTerm(t.second(), monoidalInduced) + ">";
    case Kind::Prod:
      return "<" + printTerm(t.first(), monoidalInduced) + " # " +
             printTerm(t.second(), monoidalInduced) + ">";
    case Kind::Iter:
      return "iter(" + printTerm(t.first(), monoidalInduced) + ")";
  }
  return "?";
}

/// Value literals: numerals in decimal, pairs "(x,y)", bottom "bot".
inline XValue parseValue(const std::string& text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& expected) -> XValue {
    throw SyntaxError(1, pos + 1, expected);
  };
  std::function<XValue(bool)> value = [&](bool topLevel) -> XValue {
    skip();
    if (pos >= text.size()) return fail("a value");
    char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t n = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        n = n * 10 + static_cast<std::uint64_t>(text[pos] - '0');
        ++pos;
      }
      return XValue::num(n);
    }
    if (text.compare(pos, 3, "bot") == 0) {
      if (!topLevel) return fail("a regular value (bottom is only top-level)");
      pos += 3;
      return XValue::bottom();
    }
    if (c == '(') {
      ++pos;
      XValue l = value(false);
      skip();
      if (pos >= text.size() || text[pos] != ',') return fail("','");
      ++pos;
      XValue r = value(false);
      skip();
      if (pos >= text.size() || text[pos] != ')') return fail("')'");
      ++pos;
      return XValue::pair(l, r);
    }
    return fail("a value");
  };
  XValue v = value(true);
  skip();
  if (pos != text.size()) throw SyntaxError(1, pos + 1, "end of input");
  return v;
}

inline std::string printValue(const XValue& v) { return v.toString(); }

}  // namespace prm

#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

#include "prmachine/code.hpp"

namespace prm {

/// Object of the typed theory: terminal object, naturals, or a binary product.
class ObjType {
public:
  enum class Kind : std::uint8_t { Unit, Nat, Prod };

  ObjType() : ObjType(nat()) {}

  static ObjType unit() {
    static const ObjType t{Kind::Unit, nullptr, nullptr};
    return t;
  }
  static ObjType nat() {
    static const ObjType t{Kind::Nat, nullptr, nullptr};
    return t;
  }
  static ObjType prod(const ObjType& left, const ObjType& right) {
    return ObjType(Kind::Prod, std::make_shared<ObjType>(left),
                   std::make_shared<ObjType>(right));
  }

  Kind kind() const { return kind_; }
  bool isUnit() const { return kind_ == Kind::Unit; }
  bool isNat() const { return kind_ == Kind::Nat; }
  bool isProd() const { return kind_ == Kind::Prod; }
  const ObjType& left() const { return *left_; }
  const ObjType& right() const { return *right_; }

  friend bool operator==(const ObjType& a, const ObjType& b) {
    if (a.kind_ != b.kind_) return false;
    if (a.kind_ != Kind::Prod) return true;
    return *a.left_ == *b.left_ && *a.right_ == *b.right_;
  }
  friend bool operator!=(const ObjType& a, const ObjType& b) { return !(a == b); }

  std::string toString() const {
    switch (kind_) {
      case Kind::Unit: return "1";
      case Kind::Nat: return "N";
      case Kind::Prod:
        return "(" + left_->toString() + "*" + right_->toString() + ")";
    }
    return "?";
  }

private:
  ObjType(Kind kind, std::shared_ptr<const ObjType> left,
          std::shared_ptr<const ObjType> right)
      : kind_(kind), left_(std::move(left)), right_(std::move(right)) {}

  Kind kind_;
  std::shared_ptr<const ObjType> left_;
  std::shared_ptr<const ObjType> right_;
};

struct TypeError : std::runtime_error {
  TypeError(std::string location_, std::string expected_, std::string found_)
      : std::runtime_error("type mismatch at " + location_ + ": expected " +
                           expected_ + ", found " + found_),
        location(std::move(location_)),
        expected(std::move(expected_)),
        found(std::move(found_)) {}

  std::string location;
  std::string expected;
  std::string found;
};

/// Typed map expression. Constants carry explicit object parameters so the
/// typechecker is syntax-directed: no inference.
class TypedTerm {
public:
  enum class Kind : std::uint8_t {
    Id,        // id_A : A -> A
    Zero,      // 0 : 1 -> N
    Succ,      // s : N -> N
    Terminal,  // Pi_A : A -> 1
    Diag,      // Delta_A : A -> A x A
    ProjL,     // l : A x B -> A
    ProjR,     // r : A x B -> B
    Comp,      // g . f
    Induced,   // (f, g) : C -> A x B
    Prod,      // f x g
    Iter,      // f# : A x N -> A for endo f
  };

  TypedTerm() : TypedTerm(succ()) {}

  static TypedTerm id(const ObjType& a) { return leaf(Kind::Id, a, a); }
  static TypedTerm zero() { return leaf(Kind::Zero, ObjType::unit(), ObjType::nat()); }
  static TypedTerm succ() { return leaf(Kind::Succ, ObjType::nat(), ObjType::nat()); }
  static TypedTerm terminal(const ObjType& a) { return leaf(Kind::Terminal, a, ObjType::unit()); }
  static TypedTerm diag(const ObjType& a) { return leaf(Kind::Diag, a, ObjType::prod(a, a)); }
  static TypedTerm projL(const ObjType& a, const ObjType& b) {
    return leaf(Kind::ProjL, ObjType::prod(a, b), a);
  }
  static TypedTerm projR(const ObjType& a, const ObjType& b) {
    return leaf(Kind::ProjR, ObjType::prod(a, b), b);
  }

  /// g after f; domains must meet, checked lazily by typecheck().
  static TypedTerm comp(const TypedTerm& g, const TypedTerm& f) {
    return node(Kind::Comp, g, f);
  }
  static TypedTerm induced(const TypedTerm& f, const TypedTerm& g) {
    return node(Kind::Induced, f, g);
  }
  static TypedTerm prod(const TypedTerm& f, const TypedTerm& g) {
    return node(Kind::Prod, f, g);
  }
  static TypedTerm iter(const TypedTerm& f) {
    return TypedTerm(Kind::Iter, ObjType::nat(), ObjType::nat(), share(f), nullptr);
  }

  Kind kind() const { return kind_; }
  const ObjType& typeA() const { return a_; }
  const ObjType& typeB() const { return b_; }
  const TypedTerm& first() const { return *f_; }
  const TypedTerm& second() const { return *g_; }
  bool isLeaf() const { return f_ == nullptr; }

  friend bool operator==(const TypedTerm& x, const TypedTerm& y) {
    if (x.kind_ != y.kind_) return false;
    switch (x.kind_) {
      case Kind::Id:
      case Kind::Terminal:
      case Kind::Diag:
        return x.a_ == y.a_;
      case Kind::ProjL:
      case Kind::ProjR:
        return x.a_ == y.a_;
      case Kind::Zero:
      case Kind::Succ:
        return true;
      case Kind::Iter:
        return *x.f_ == *y.f_;
      default:
        return *x.f_ == *y.f_ && *x.g_ == *y.g_;
    }
  }
  friend bool operator!=(const TypedTerm& x, const TypedTerm& y) { return !(x == y); }

private:
  static TypedTerm leaf(Kind k, const ObjType& a, const ObjType& b) {
    return TypedTerm(k, a, b, nullptr, nullptr);
  }
  static TypedTerm node(Kind k, const TypedTerm& f, const TypedTerm& g) {
    return TypedTerm(k, ObjType::nat(), ObjType::nat(), share(f), share(g));
  }
  static std::shared_ptr<const TypedTerm> share(const TypedTerm& t) {
    return std::make_shared<TypedTerm>(t);
  }

  TypedTerm(Kind kind, ObjType a, ObjType b, std::shared_ptr<const TypedTerm> f,
            std::shared_ptr<const TypedTerm> g)
      : kind_(kind), a_(std::move(a)), b_(std::move(b)), f_(std::move(f)), g_(std::move(g)) {}

  Kind kind_;
  ObjType a_;  // leaf parameter: the A of id_A, Pi_A, Delta_A; the domain AxB of projections
  ObjType b_;  // unused on composite nodes
  std::shared_ptr<const TypedTerm> f_;
  std::shared_ptr<const TypedTerm> g_;
};

struct Signature {
  ObjType dom;
  ObjType cod;

  friend bool operator==(const Signature& a, const Signature& b) {
    return a.dom == b.dom && a.cod == b.cod;
  }
};

namespace detail {

inline Signature typecheckAt(const TypedTerm& t, const std::string& where) {
  using Kind = TypedTerm::Kind;
  switch (t.kind()) {
    case Kind::Id: return {t.typeA(), t.typeA()};
    case Kind::Zero: return {ObjType::unit(), ObjType::nat()};
    case Kind::Succ: return {ObjType::nat(), ObjType::nat()};
    case Kind::Terminal: return {t.typeA(), ObjType::unit()};
    case Kind::Diag: return {t.typeA(), ObjType::prod(t.typeA(), t.typeA())};
    case Kind::ProjL: return {t.typeA(), t.typeA().left()};
    case Kind::ProjR: return {t.typeA(), t.typeA().right()};
    case Kind::Comp: {
      Signature g = typecheckAt(t.first(), where + ".after");
      Signature f = typecheckAt(t.second(), where + ".before");
      if (!(f.cod == g.dom))
        throw TypeError(where, g.dom.toString(), f.cod.toString());
      return {f.dom, g.cod};
    }
    case Kind::Induced: {
      Signature f = typecheckAt(t.first(), where + ".left");
      Signature g = typecheckAt(t.second(), where + ".right");
      if (!(f.dom == g.dom))
        throw TypeError(where, f.dom.toString(), g.dom.toString());
      return {f.dom, ObjType::prod(f.cod, g.cod)};
    }
    case Kind::Prod: {
      Signature f = typecheckAt(t.first(), where + ".left");
      Signature g = typecheckAt(t.second(), where + ".right");
      return {ObjType::prod(f.dom, g.dom), ObjType::prod(f.cod, g.cod)};
    }
    case Kind::Iter: {
      Signature f = typecheckAt(t.first(), where + ".body");
      if (!(f.dom == f.cod))
        throw TypeError(where, f.dom.toString(), f.cod.toString());
      return {ObjType::prod(f.dom, ObjType::nat()), f.dom};
    }
  }
  throw TypeError(where, "term", "unknown constructor");
}

}  // namespace detail

/// Returns the unique signature of a well-typed term, or throws TypeError.
inline Signature typecheck(const TypedTerm& t) { return detail::typecheckAt(t, "root"); }

/// Full scheme of primitive recursion, derived from iteration over the
/// state object (A x N) x B: start at ((a,0), g(a)), step
/// ((a,k), b) -> ((a,k+1), h((a,k), b)), keep the B component.
inline TypedTerm desugarPr(const TypedTerm& g, const TypedTerm& h) {
  Signature sg = typecheck(g);
  Signature sh = typecheck(h);
  const ObjType& a = sg.dom;
  const ObjType& b = sg.cod;
  ObjType an = ObjType::prod(a, ObjType::nat());
  ObjType state = ObjType::prod(an, b);
  Signature expected{ObjType::prod(an, b), b};
  if (!(sh == expected))
    throw TypeError("pr.step", expected.dom.toString() + "->" + expected.cod.toString(),
                    sh.dom.toString() + "->" + sh.cod.toString());

  TypedTerm outerL = TypedTerm::projL(an, b);  // state -> (A x N)
  TypedTerm bump = TypedTerm::induced(
      TypedTerm::comp(TypedTerm::projL(a, ObjType::nat()), outerL),
      TypedTerm::comp(TypedTerm::succ(),
                      TypedTerm::comp(TypedTerm::projR(a, ObjType::nat()), outerL)));
  TypedTerm stepT = TypedTerm::induced(bump, h);  // state -> state

  TypedTerm firstArg = TypedTerm::projL(a, ObjType::nat());  // (A x N) -> A
  TypedTerm init = TypedTerm::induced(
      TypedTerm::induced(firstArg, TypedTerm::comp(TypedTerm::zero(), TypedTerm::terminal(an))),
      TypedTerm::comp(g, firstArg));  // (A x N) -> state

  return TypedTerm::comp(
      TypedTerm::projR(an, b),
      TypedTerm::comp(TypedTerm::iter(stepT),
                      TypedTerm::induced(init, TypedTerm::projR(a, ObjType::nat()))));
}

/// Code-level twin of desugarPr; the construction is type-uniform, so the
/// erased shape only depends on the erased pieces.
inline Code desugarPrCode(const Code& g, const Code& h) {
  Code outerL = Code::basic(Basic::ProjL);
  Code bump = Code::ind(
      Code::comp(Code::basic(Basic::ProjL), outerL),
      Code::comp(Code::basic(Basic::Succ), Code::comp(Code::basic(Basic::ProjR), outerL)));
  Code stepC = Code::ind(bump, h);
  Code firstArg = Code::basic(Basic::ProjL);
  Code init = Code::ind(
      Code::ind(firstArg, Code::comp(Code::basic(Basic::Zero), Code::basic(Basic::Pi))),
      Code::comp(g, firstArg));
  return Code::comp(Code::basic(Basic::ProjR),
                    Code::comp(Code::iter(stepC), Code::ind(init, Code::basic(Basic::ProjR))));
}

/// Structural erasure into the untyped calculus: drop all object
/// parameters, preserve the combinator tree.
inline Code erase(const TypedTerm& t) {
  using Kind = TypedTerm::Kind;
  switch (t.kind()) {
    case Kind::Id: return Code::basic(Basic::Id);
    case Kind::Zero: return Code::basic(Basic::Zero);
    case Kind::Succ: return Code::basic(Basic::Succ);
    case Kind::Terminal: return Code::basic(Basic::Pi);
    case Kind::Diag: return Code::basic(Basic::Delta);
    case Kind::ProjL: return Code::basic(Basic::ProjL);
    case Kind::ProjR: return Code::basic(Basic::ProjR);
    case Kind::Comp: return Code::comp(erase(t.first()), erase(t.second()));
    case Kind::Induced: return Code::ind(erase(t.first()), erase(t.second()));
    case Kind::Prod: return Code::prod(erase(t.first()), erase(t.second()));
    case Kind::Iter: return Code::iter(erase(t.first()));
  }
  return Code::basic(Basic::Id);
}

}  // namespace prm

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "prmachine/term.hpp"
#include "prmachine/value.hpp"

namespace prm {

struct ShapeMismatch : std::runtime_error {
  explicit ShapeMismatch(const std::string& what) : std::runtime_error(what) {}
};

/// Typed value: an element of a typed object, shaped like its ObjType.
class TValue {
public:
  enum class Kind : std::uint8_t { Unit, Nat, Pair };

  TValue() : TValue(nat(0)) {}

  static TValue unit() { return TValue(Kind::Unit, 0, nullptr, nullptr); }
  static TValue nat(std::uint64_t n) { return TValue(Kind::Nat, n, nullptr, nullptr); }
  static TValue pair(const TValue& l, const TValue& r) {
    return TValue(Kind::Pair, 0, std::make_shared<TValue>(l), std::make_shared<TValue>(r));
  }

  Kind kind() const { return kind_; }
  bool isUnit() const { return kind_ == Kind::Unit; }
  bool isNat() const { return kind_ == Kind::Nat; }
  bool isPair() const { return kind_ == Kind::Pair; }
  std::uint64_t natValue() const {
    if (!isNat()) throw ShapeMismatch("expected a natural");
    return n_;
  }
  const TValue& left() const {
    if (!isPair()) throw ShapeMismatch("expected a pair");
    return *l_;
  }
  const TValue& right() const {
    if (!isPair()) throw ShapeMismatch("expected a pair");
    return *r_;
  }

  friend bool operator==(const TValue& a, const TValue& b) {
    if (a.kind_ != b.kind_) return false;
    switch (a.kind_) {
      case Kind::Unit: return true;
      case Kind::Nat: return a.n_ == b.n_;
      case Kind::Pair: return *a.l_ == *b.l_ && *a.r_ == *b.r_;
    }
    return false;
  }
  friend bool operator!=(const TValue& a, const TValue& b) { return !(a == b); }

  std::string toString() const {
    switch (kind_) {
      case Kind::Unit: return "()";
      case Kind::Nat: return std::to_string(n_);
      case Kind::Pair: return "(" + l_->toString() + "," + r_->toString() + ")";
    }
    return "()";
  }

private:
  TValue(Kind kind, std::uint64_t n, std::shared_ptr<const TValue> l,
         std::shared_ptr<const TValue> r)
      : kind_(kind), n_(n), l_(std::move(l)), r_(std::move(r)) {}

  Kind kind_;
  std::uint64_t n_;
  std::shared_ptr<const TValue> l_;
  std::shared_ptr<const TValue> r_;
};

inline bool matchesType(const TValue& v, const ObjType& t) {
  switch (t.kind()) {
    case ObjType::Kind::Unit: return v.isUnit();
    case ObjType::Kind::Nat: return v.isNat();
    case ObjType::Kind::Prod:
      return v.isPair() && matchesType(v.left(), t.left()) &&
             matchesType(v.right(), t.right());
  }
  return false;
}

/// Direct interpretation of a typed term as a function on typed values.
/// Iteration runs natively; this never touches codes or the step machine,
/// which is the point: it is the independent reference semantics.
inline TValue denote(const TypedTerm& t, const TValue& v) {
  using Kind = TypedTerm::Kind;
  switch (t.kind()) {
    case Kind::Id: return v;
    case Kind::Zero: return TValue::nat(0);
    case Kind::Succ: return TValue::nat(v.natValue() + 1);
    case Kind::Terminal: return TValue::unit();
    case Kind::Diag: return TValue::pair(v, v);
    case Kind::ProjL: return v.left();
    case Kind::ProjR: return v.right();
    case Kind::Comp: return denote(t.first(), denote(t.second(), v));
    case Kind::Induced: return TValue::pair(denote(t.first(), v), denote(t.second(), v));
    case Kind::Prod:
      return TValue::pair(denote(t.first(), v.left()), denote(t.second(), v.right()));
    case Kind::Iter: {
      TValue acc = v.left();
      std::uint64_t n = v.right().natValue();
      for (std::uint64_t i = 0; i < n; ++i) acc = denote(t.first(), acc);
      return acc;
    }
  }
  throw ShapeMismatch("unknown constructor");
}

/// Builds the left-nested value of shape `t` from a flat list of naturals;
/// unit components consume nothing.
inline TValue valueFromNats(const ObjType& t, std::span<const std::uint64_t>& rest) {
  switch (t.kind()) {
    case ObjType::Kind::Unit: return TValue::unit();
    case ObjType::Kind::Nat: {
      if (rest.empty()) throw ShapeMismatch("not enough naturals for shape");
      std::uint64_t n = rest.front();
      rest = rest.subspan(1);
      return TValue::nat(n);
    }
    case ObjType::Kind::Prod: {
      TValue l = valueFromNats(t.left(), rest);
      TValue r = valueFromNats(t.right(), rest);
      return TValue::pair(l, r);
    }
  }
  throw ShapeMismatch("unknown type");
}

inline TValue valueFromNats(const ObjType& t, std::initializer_list<std::uint64_t> ns) {
  std::vector<std::uint64_t> buf(ns);
  std::span<const std::uint64_t> rest(buf);
  TValue v = valueFromNats(t, rest);
  if (!rest.empty()) throw ShapeMismatch("too many naturals for shape");
  return v;
}

/// Applies a term to naturals laid out along its domain shape.
inline TValue denoteOnNats(const TypedTerm& t, std::initializer_list<std::uint64_t> args) {
  Signature sig = typecheck(t);
  TValue v = valueFromNats(sig.dom, args);
  return denote(t, v);
}

/// Typed values embed into the universal set: unit becomes the zero
/// numeral, naturals become numerals, pairs become pairs.
inline XValue embedValue(const TValue& v) {
  switch (v.kind()) {
    case TValue::Kind::Unit: return XValue::num(0);
    case TValue::Kind::Nat: return XValue::num(v.natValue());
    case TValue::Kind::Pair: return XValue::pair(embedValue(v.left()), embedValue(v.right()));
  }
  return XValue::bottom();
}

}  // namespace prm

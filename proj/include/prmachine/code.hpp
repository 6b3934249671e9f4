#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>

namespace prm {

/// The seven basic map symbols of the untyped universe calculus.
enum class Basic : std::uint8_t { Id, Zero, Succ, Pi, Delta, ProjL, ProjR };

inline constexpr std::array<Basic, 7> kAllBasics = {
    Basic::Id,   Basic::Zero,  Basic::Succ, Basic::Pi,
    Basic::Delta, Basic::ProjL, Basic::ProjR};

inline const char* basicName(Basic b) {
  switch (b) {
    case Basic::Id: return "id";
    case Basic::Zero: return "zero";
    case Basic::Succ: return "s";
    case Basic::Pi: return "pi";
    case Basic::Delta: return "delta";
    case Basic::ProjL: return "l";
    case Basic::ProjR: return "r";
  }
  return "?";
}

/// Untyped map code: a basic symbol, an internal composition <v . u>
/// (v applied second), an internal induced <u ; v>, an internal cartesian
/// product <u # v>, or an internal iterate u$.
class Code {
public:
  enum class Kind : std::uint8_t { Basic, Comp, Ind, Prod, Iter };

  Code() : Code(basic(Basic::Id)) {}

  static Code basic(Basic b) { return Code(Kind::Basic, b, nullptr, nullptr); }
  /// outer is applied second: comp(v, u) denotes v after u.
  static Code comp(const Code& outer, const Code& inner) {
    return Code(Kind::Comp, Basic::Id, share(outer), share(inner));
  }
  static Code ind(const Code& u, const Code& v) {
    return Code(Kind::Ind, Basic::Id, share(u), share(v));
  }
  static Code prod(const Code& u, const Code& v) {
    return Code(Kind::Prod, Basic::Id, share(u), share(v));
  }
  static Code iter(const Code& u) {
    return Code(Kind::Iter, Basic::Id, share(u), nullptr);
  }

  Kind kind() const { return kind_; }
  bool isBasic() const { return kind_ == Kind::Basic; }
  bool isBasic(Basic b) const { return kind_ == Kind::Basic && basic_ == b; }
  Basic basicSym() const { return basic_; }

  /// first child: outer code of a composition, left of ind/prod, body of iter.
  const Code& first() const { return *a_; }
  const Code& second() const { return *b_; }

  std::size_t size() const {
    switch (kind_) {
      case Kind::Basic: return 1;
      case Kind::Iter: return 1 + a_->size();
      default: return 1 + a_->size() + b_->size();
    }
  }

  friend bool operator==(const Code& x, const Code& y) {
    if (x.kind_ != y.kind_) return false;
    switch (x.kind_) {
      case Kind::Basic: return x.basic_ == y.basic_;
      case Kind::Iter: return *x.a_ == *y.a_;
      default: return *x.a_ == *y.a_ && *x.b_ == *y.b_;
    }
  }
  friend bool operator!=(const Code& x, const Code& y) { return !(x == y); }

  /// Structural total order: by kind, then basic symbol / children.
  /// Used for canonical enumeration order; unrelated to complexity.
  friend int structuralCompare(const Code& x, const Code& y) {
    if (x.kind_ != y.kind_) return x.kind_ < y.kind_ ? -1 : 1;
    switch (x.kind_) {
      case Kind::Basic:
        if (x.basic_ != y.basic_) return x.basic_ < y.basic_ ? -1 : 1;
        return 0;
      case Kind::Iter:
        return structuralCompare(*x.a_, *y.a_);
      default: {
        int c = structuralCompare(*x.a_, *y.a_);
        if (c != 0) return c;
        return structuralCompare(*x.b_, *y.b_);
      }
    }
  }

private:
  static std::shared_ptr<const Code> share(const Code& c) {
    return std::make_shared<Code>(c);
  }

  Code(Kind kind, Basic b, std::shared_ptr<const Code> a, std::shared_ptr<const Code> bb)
      : kind_(kind), basic_(b), a_(std::move(a)), b_(std::move(bb)) {}

  Kind kind_;
  Basic basic_;
  std::shared_ptr<const Code> a_;
  std::shared_ptr<const Code> b_;
};

}  // namespace prm

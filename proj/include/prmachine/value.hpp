#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>

namespace prm {

struct NotANumeral : std::runtime_error {
  NotANumeral() : std::runtime_error("value is not a numeral") {}
};

/// Element of the universal value set: bottom (trash), a numeral, or a
/// nested pair. Trash never occurs inside a pair: building a pair with a
/// bottom component yields bottom outright, so undefinedness is always
/// top-level.
class XValue {
public:
  enum class Kind : std::uint8_t { Bottom, Num, Pair };

  XValue() : XValue(bottom()) {}

  static XValue bottom() { return XValue(Kind::Bottom, 0, nullptr, nullptr); }

  static XValue num(std::uint64_t n) { return XValue(Kind::Num, n, nullptr, nullptr); }

  static XValue pair(const XValue& left, const XValue& right) {
    if (left.isBottom() || right.isBottom()) return bottom();
    return XValue(Kind::Pair, 0, std::make_shared<XValue>(left),
                  std::make_shared<XValue>(right));
  }

  Kind kind() const { return kind_; }
  bool isBottom() const { return kind_ == Kind::Bottom; }
  bool isNum() const { return kind_ == Kind::Num; }
  bool isPair() const { return kind_ == Kind::Pair; }

  std::uint64_t numValue() const { return n_; }
  const XValue& left() const { return *left_; }
  const XValue& right() const { return *right_; }

  friend bool operator==(const XValue& a, const XValue& b) {
    if (a.kind_ != b.kind_) return false;
    switch (a.kind_) {
      case Kind::Bottom: return true;
      case Kind::Num: return a.n_ == b.n_;
      case Kind::Pair: return *a.left_ == *b.left_ && *a.right_ == *b.right_;
    }
    return false;
  }
  friend bool operator!=(const XValue& a, const XValue& b) { return !(a == b); }

  std::size_t pairDepth() const {
    if (!isPair()) return 0;
    return 1 + std::max(left_->pairDepth(), right_->pairDepth());
  }

  /// Value literal: numerals in decimal, pairs as (x,y), bottom as "bot".
  std::string toString() const {
    switch (kind_) {
      case Kind::Bottom: return "bot";
      case Kind::Num: return std::to_string(n_);
      case Kind::Pair: return "(" + left_->toString() + "," + right_->toString() + ")";
    }
    return "bot";
  }

private:
  XValue(Kind kind, std::uint64_t n, std::shared_ptr<const XValue> left,
         std::shared_ptr<const XValue> right)
      : kind_(kind), n_(n), left_(std::move(left)), right_(std::move(right)) {}

  Kind kind_;
  std::uint64_t n_;
  std::shared_ptr<const XValue> left_;
  std::shared_ptr<const XValue> right_;
};

/// Numeralisation: the canonical internal representative of a natural.
inline XValue nu(std::uint64_t n) { return XValue::num(n); }

inline std::uint64_t nuInverse(const XValue& x) {
  if (!x.isNum()) throw NotANumeral();
  return x.numValue();
}

}  // namespace prm

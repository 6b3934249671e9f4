#pragma once

#include <cmath>
#include <cstdint>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "prmachine/code.hpp"
#include "prmachine/ordinal.hpp"
#include "prmachine/value.hpp"

namespace prm {

struct NotInX : std::runtime_error {
  explicit NotInX(const std::string& what) : std::runtime_error(what) {}
};

namespace godel {

// Symbol alphabet shared by value strings and code strings. Numerals are
// literally iterated-successor composition strings, so the two layers use
// one coding universe.
enum Symbol : std::uint8_t {
  kOpen = 1,    // <
  kClose = 2,   // >
  kComp = 3,    // composition
  kSep = 4,     // pair / induced separator
  kProd = 5,    // cartesian product
  kIter = 6,    // postfix iterate
  kBottom = 7,  // trash
  kId = 8,
  kZero = 9,  // zero map, doubles as the numeral zero
  kSucc = 10,
  kPi = 11,
  kDelta = 12,
  kProjL = 13,
  kProjR = 14,
};

inline constexpr std::uint8_t kMaxSymbol = 14;

inline Symbol basicSymbol(Basic b) {
  switch (b) {
    case Basic::Id: return kId;
    case Basic::Zero: return kZero;
    case Basic::Succ: return kSucc;
    case Basic::Pi: return kPi;
    case Basic::Delta: return kDelta;
    case Basic::ProjL: return kProjL;
    case Basic::ProjR: return kProjR;
  }
  return kId;
}

inline std::optional<Basic> symbolBasic(std::uint8_t s) {
  switch (s) {
    case kId: return Basic::Id;
    case kZero: return Basic::Zero;
    case kSucc: return Basic::Succ;
    case kPi: return Basic::Pi;
    case kDelta: return Basic::Delta;
    case kProjL: return Basic::ProjL;
    case kProjR: return Basic::ProjR;
    default: return std::nullopt;
  }
}

using SymbolString = std::vector<std::uint8_t>;

inline void appendValueString(const XValue& x, SymbolString& out) {
  switch (x.kind()) {
    case XValue::Kind::Bottom:
      out.push_back(kBottom);
      return;
    case XValue::Kind::Num: {
      // nu(n) = <s . <s . ... <s . zero> ... >>, n nesting levels
      std::uint64_t n = x.numValue();
      for (std::uint64_t i = 0; i < n; ++i) {
        out.push_back(kOpen);
        out.push_back(kSucc);
        out.push_back(kComp);
      }
      out.push_back(kZero);
      for (std::uint64_t i = 0; i < n; ++i) out.push_back(kClose);
      return;
    }
    case XValue::Kind::Pair:
      out.push_back(kOpen);
      appendValueString(x.left(), out);
      out.push_back(kSep);
      appendValueString(x.right(), out);
      out.push_back(kClose);
      return;
  }
}

inline void appendCodeString(const Code& c, SymbolString& out) {
  switch (c.kind()) {
    case Code::Kind::Basic:
      out.push_back(basicSymbol(c.basicSym()));
      return;
    case Code::Kind::Comp:
      out.push_back(kOpen);
      appendCodeString(c.first(), out);
      out.push_back(kComp);
      appendCodeString(c.second(), out);
      out.push_back(kClose);
      return;
    case Code::Kind::Ind:
    case Code::Kind::Prod:
      out.push_back(kOpen);
      appendCodeString(c.first(), out);
      out.push_back(c.kind() == Code::Kind::Ind ? kSep : kProd);
      appendCodeString(c.second(), out);
      out.push_back(kClose);
      return;
    case Code::Kind::Iter:
      appendCodeString(c.first(), out);
      out.push_back(kIter);
      return;
  }
}

/// First `count` primes; the shared cache grows under a lock and callers
/// get a private copy, so concurrent encoding stays safe.
inline std::vector<unsigned long> primes(std::size_t count) {
  static std::mutex growthLock;
  static std::vector<unsigned long> cache = {2, 3, 5, 7, 11, 13};
  std::lock_guard<std::mutex> guard(growthLock);
  while (cache.size() < count) {
    unsigned long candidate = cache.back() + 2;
    for (;; candidate += 2) {
      bool composite = false;
      for (unsigned long p : cache) {
        if (p * p > candidate) break;
        if (candidate % p == 0) {
          composite = true;
          break;
        }
      }
      if (!composite) break;
    }
    cache.push_back(candidate);
  }
  return {cache.begin(), cache.begin() + static_cast<std::ptrdiff_t>(count)};
}

/// Prime power product of a symbol string: position i contributes
/// p_i ^ string[i].
inline BigNat encodeString(const SymbolString& s) {
  const auto& ps = primes(s.size());
  BigNat g = 1;
  BigNat factor;
  for (std::size_t i = 0; i < s.size(); ++i) {
    mpz_ui_pow_ui(factor.get_mpz_t(), ps[i], s[i]);
    g *= factor;
  }
  return g;
}

/// Inverse of encodeString on its range; nullopt if g is not a contiguous
/// prime power product with in-alphabet exponents.
inline std::optional<SymbolString> decodeString(const BigNat& g) {
  if (g <= 1) return std::nullopt;
  SymbolString s;
  BigNat rest = g;
  std::vector<unsigned long> ps = primes(16);
  for (std::size_t i = 0; rest != 1; ++i) {
    if (i >= ps.size()) ps = primes(ps.size() * 2);
    unsigned long p = ps[i];
    unsigned int exponent = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++exponent;
    }
    if (exponent == 0 || exponent > kMaxSymbol) return std::nullopt;
    s.push_back(static_cast<std::uint8_t>(exponent));
  }
  return s;
}

class StringParser {
public:
  explicit StringParser(const SymbolString& s) : s_(s) {}

  std::optional<XValue> parseValue() {
    auto v = value();
    if (!v || pos_ != s_.size()) return std::nullopt;
    return v;
  }

  std::optional<Code> parseCode() {
    auto c = code();
    if (!c || pos_ != s_.size()) return std::nullopt;
    return c;
  }

private:
  std::optional<XValue> value() {
    if (peek() == kBottom) {
      ++pos_;
      return XValue::bottom();
    }
    return regular();
  }

  // Numerals and pairs; bottom only occurs top-level.
  std::optional<XValue> regular() {
    switch (peek()) {
      case kZero:
        ++pos_;
        return XValue::num(0);
      case kOpen: {
        ++pos_;
        if (peek() == kSucc) {
          ++pos_;
          if (!eat(kComp)) return std::nullopt;
          auto inner = regular();
          if (!inner || !inner->isNum() || !eat(kClose)) return std::nullopt;
          return XValue::num(inner->numValue() + 1);
        }
        auto l = regular();
        if (!l || !eat(kSep)) return std::nullopt;
        auto r = regular();
        if (!r || !eat(kClose)) return std::nullopt;
        return XValue::pair(*l, *r);
      }
      default:
        return std::nullopt;
    }
  }

  std::optional<Code> code() {
    std::optional<Code> c;
    if (auto b = symbolBasic(peek())) {
      ++pos_;
      c = Code::basic(*b);
    } else if (peek() == kOpen) {
      ++pos_;
      auto first = code();
      if (!first) return std::nullopt;
      std::uint8_t op = peek();
      if (op != kComp && op != kSep && op != kProd) return std::nullopt;
      ++pos_;
      auto second = code();
      if (!second || !eat(kClose)) return std::nullopt;
      switch (op) {
        case kComp: c = Code::comp(*first, *second); break;
        case kSep: c = Code::ind(*first, *second); break;
        default: c = Code::prod(*first, *second); break;
      }
    } else {
      return std::nullopt;
    }
    while (peek() == kIter) {
      ++pos_;
      c = Code::iter(*c);
    }
    return c;
  }

  std::uint8_t peek() const { return pos_ < s_.size() ? s_[pos_] : 0; }

  bool eat(std::uint8_t sym) {
    if (peek() != sym) return false;
    ++pos_;
    return true;
  }

  const SymbolString& s_;
  std::size_t pos_ = 0;
};

}  // namespace godel

inline BigNat encodeValue(const XValue& x) {
  godel::SymbolString s;
  godel::appendValueString(x, s);
  return godel::encodeString(s);
}

inline BigNat encodeCode(const Code& c) {
  godel::SymbolString s;
  godel::appendCodeString(c, s);
  return godel::encodeString(s);
}

inline std::optional<XValue> tryDecodeValue(const BigNat& g) {
  auto s = godel::decodeString(g);
  if (!s) return std::nullopt;
  return godel::StringParser(*s).parseValue();
}

inline std::optional<Code> tryDecodeCode(const BigNat& g) {
  auto s = godel::decodeString(g);
  if (!s) return std::nullopt;
  return godel::StringParser(*s).parseCode();
}

inline XValue decodeValue(const BigNat& g) {
  auto v = tryDecodeValue(g);
  if (!v) throw NotInX("integer " + g.get_str() + " is not a value encoding");
  return *v;
}

inline Code decodeCode(const BigNat& g) {
  auto c = tryDecodeCode(g);
  if (!c) throw NotInX("integer " + g.get_str() + " is not a code encoding");
  return *c;
}

/// Membership predicate for encoded values: true iff g decodes to a
/// well-formed value (the empty string, integer 1, is excluded).
inline bool isX(const BigNat& g) { return tryDecodeValue(g).has_value(); }

/// Diagonal pairing bijection N x N -> N with (0,0) -> 0.
inline std::uint64_t cantorPair(std::uint64_t m, std::uint64_t n) {
  unsigned __int128 d = static_cast<unsigned __int128>(m) + n;
  unsigned __int128 k = d * (d + 1) / 2 + n;
  if (k > static_cast<unsigned __int128>(UINT64_MAX))
    throw std::overflow_error("cantorPair overflow");
  return static_cast<std::uint64_t>(k);
}

inline std::pair<std::uint64_t, std::uint64_t> cantorUnpair(std::uint64_t k) {
  // Diagonal index: largest w with w(w+1)/2 <= k.
  unsigned __int128 kk = k;
  std::uint64_t w = static_cast<std::uint64_t>(
      (std::sqrt(8.0L * static_cast<long double>(k) + 1.0L) - 1.0L) / 2.0L);
  auto tri = [](unsigned __int128 x) { return x * (x + 1) / 2; };
  while (tri(w) > kk) --w;
  while (tri(static_cast<unsigned __int128>(w) + 1) <= kk) ++w;
  std::uint64_t n = static_cast<std::uint64_t>(kk - tri(w));
  return {w - n, n};
}

}  // namespace prm

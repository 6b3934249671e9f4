#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace prm {

/// Arbitrary-precision natural number. Iteration counts flow into
/// complexity coefficients, so fixed-width integers are not enough.
using BigNat = mpz_class;

/// Polynomial in one indeterminate omega with natural coefficients,
/// ordered lexicographically with priority to higher powers.
///
/// Representation: little-endian coefficient vector, normalized so the
/// last stored coefficient is nonzero (zero is the empty vector).
/// Normalization makes equality structural.
class OrdPoly {
public:
  OrdPoly() = default;

  explicit OrdPoly(unsigned long constant) {
    if (constant != 0) coeffs_.emplace_back(constant);
  }

  explicit OrdPoly(std::vector<BigNat> coeffs) : coeffs_(std::move(coeffs)) {
    normalize();
  }

  static OrdPoly zero() { return OrdPoly(); }
  static OrdPoly one() { return OrdPoly(1ul); }

  /// omega^power with the given coefficient.
  static OrdPoly monomial(BigNat coefficient, std::size_t power) {
    OrdPoly p;
    if (coefficient != 0) {
      p.coeffs_.assign(power + 1, BigNat(0));
      p.coeffs_[power] = std::move(coefficient);
    }
    return p;
  }

  bool isZero() const { return coeffs_.empty(); }

  /// degree of the zero polynomial is undefined; callers must check isZero.
  std::size_t degree() const { return coeffs_.size() - 1; }

  const std::vector<BigNat>& coeffs() const { return coeffs_; }

  BigNat coeff(std::size_t power) const {
    return power < coeffs_.size() ? coeffs_[power] : BigNat(0);
  }

  friend OrdPoly operator+(const OrdPoly& a, const OrdPoly& b) {
    OrdPoly r;
    r.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i)
      r.coeffs_[i] = a.coeff(i) + b.coeff(i);
    r.normalize();
    return r;
  }

  /// Componentwise truncated subtraction: coefficients floor at zero.
  OrdPoly truncSub(const OrdPoly& other) const {
    OrdPoly r;
    r.coeffs_.resize(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      BigNat d = coeffs_[i] - other.coeff(i);
      r.coeffs_[i] = d < 0 ? BigNat(0) : d;
    }
    r.normalize();
    return r;
  }

  /// Multiplication by omega: shifts every coefficient up one power.
  OrdPoly mulOmega() const {
    if (isZero()) return OrdPoly();
    OrdPoly r;
    r.coeffs_.reserve(coeffs_.size() + 1);
    r.coeffs_.emplace_back(0);
    r.coeffs_.insert(r.coeffs_.end(), coeffs_.begin(), coeffs_.end());
    return r;
  }

  /// Scalar multiple; natMul(0, p) collapses to zero.
  OrdPoly natMul(const BigNat& k) const {
    if (k == 0) return OrdPoly();
    OrdPoly r;
    r.coeffs_.reserve(coeffs_.size());
    for (const auto& c : coeffs_) r.coeffs_.emplace_back(c * k);
    return r;
  }

  /// Lexicographic order with priority to higher powers: the nonzero
  /// coefficient of highest power decides first.
  friend std::strong_ordering operator<=>(const OrdPoly& a, const OrdPoly& b) {
    if (a.coeffs_.size() != b.coeffs_.size())
      return a.coeffs_.size() < b.coeffs_.size() ? std::strong_ordering::less
                                                 : std::strong_ordering::greater;
    for (std::size_t i = a.coeffs_.size(); i-- > 0;) {
      int c = cmp(a.coeffs_[i], b.coeffs_[i]);
      if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

  friend bool operator==(const OrdPoly& a, const OrdPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }

  /// Little-endian list form, e.g. 2*omega prints as [0,2]; zero as [0].
  std::string toString() const {
    if (isZero()) return "[0]";
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (i) out << ',';
      out << coeffs_[i].get_str();
    }
    out << ']';
    return out.str();
  }

private:
  void normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<BigNat> coeffs_;
};

}  // namespace prm

// Rational functions in v over Q, used wherever (u+1)^-1 or a general
// division by a Laurent polynomial appears.

#pragma once

#include <optional>
#include <string>

#include "hinv/laurent.hpp"

namespace hinv {

/// Greatest common divisor in Z[v, v^-1]; the result is primitive up to the
/// integer content gcd, has lowest exponent 0 and positive leading coefficient.
/// gcd(0, 0) = 0.
BigLaurent poly_gcd(const BigLaurent& a, const BigLaurent& b);

/// numerator / denominator with gcd(numerator, denominator) = 1, denominator
/// of lowest exponent 0 and positive leading coefficient. This makes the
/// representation unique, so structural equality is equality in Q(v).
class RationalFn {
 public:
  RationalFn() : num_(), den_(1) {}
  RationalFn(int c) : num_(c), den_(1) {}  // NOLINT
  RationalFn(const LaurentPoly& p) : num_(BigLaurent::convert(p)), den_(1) {}  // NOLINT
  RationalFn(const BigLaurent& p) : num_(p), den_(1) {}                        // NOLINT
  RationalFn(BigLaurent num, BigLaurent den);

  [[nodiscard]] const BigLaurent& numerator() const { return num_; }
  [[nodiscard]] const BigLaurent& denominator() const { return den_; }
  [[nodiscard]] bool is_zero() const { return num_.is_zero(); }

  /// The Laurent polynomial this equals, if any (denominator a unit).
  [[nodiscard]] std::optional<LaurentPoly> to_laurent() const;
  [[nodiscard]] std::optional<BigLaurent> to_big_laurent() const;

  [[nodiscard]] RationalFn bar() const;
  [[nodiscard]] RationalFn inverse() const;

  RationalFn operator-() const { return {-num_, den_}; }
  friend RationalFn operator+(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b) { return a + (-b); }
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator/(const RationalFn& a, const RationalFn& b) { return a * b.inverse(); }
  RationalFn& operator+=(const RationalFn& o) { return *this = *this + o; }
  RationalFn& operator-=(const RationalFn& o) { return *this = *this - o; }
  RationalFn& operator*=(const RationalFn& o) { return *this = *this * o; }

  friend bool operator==(const RationalFn& a, const RationalFn& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFn& a, const RationalFn& b) { return !(a == b); }

 private:
  BigLaurent num_;
  BigLaurent den_;

  struct Normalized {};
  RationalFn(BigLaurent num, BigLaurent den, Normalized) : num_(std::move(num)), den_(std::move(den)) {}
};

std::string to_string(const RationalFn& f);

}  // namespace hinv

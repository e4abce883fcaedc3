// Exact integer Laurent polynomials in v.
//
// The subring Z[u, u^-1] with u = v^2 is represented by polynomials supported
// on even exponents; no separate u-type exists.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include "json.hpp"

namespace hinv {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in addition");
  return r;
}
inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in subtraction");
  return r;
}
inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in multiplication");
  return r;
}
inline BigInt add(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt sub(const BigInt& a, const BigInt& b) { return a - b; }
inline BigInt mul(const BigInt& a, const BigInt& b) { return a * b; }

inline bool is_zero(std::int64_t a) { return a == 0; }
inline bool is_zero(const BigInt& a) { return a.is_zero(); }

}  // namespace detail

/// Sparse Laurent polynomial sum c_e v^e with coefficients in Z.
///
/// Terms are kept sorted by increasing exponent with no zero coefficients, so
/// structural equality is mathematical equality.
template <class Z>
class Laurent {
 public:
  using Coeff = Z;
  using Term = std::pair<int, Z>;

  Laurent() = default;
  Laurent(int c) : Laurent(Z(c)) {}  // NOLINT: integers embed as constants
  Laurent(const Z& c) {              // NOLINT
    if (!detail::is_zero(c)) terms_.emplace_back(0, c);
  }

  static Laurent monomial(const Z& c, int e) {
    Laurent p;
    if (!detail::is_zero(c)) p.terms_.emplace_back(e, c);
    return p;
  }
  static Laurent v_power(int e) { return monomial(Z(1), e); }
  static Laurent u_power(int e) { return monomial(Z(1), 2 * e); }

  static Laurent from_terms(std::vector<Term> terms) {
    Laurent p;
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  template <class W>
  static Laurent convert(const Laurent<W>& other) {
    Laurent p;
    p.terms_.reserve(other.terms().size());
    for (const auto& [e, c] : other.terms()) p.terms_.emplace_back(e, Z(c));
    return p;
  }

  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

  [[nodiscard]] Z coeff(int e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, int x) { return t.first < x; });
    if (it != terms_.end() && it->first == e) return it->second;
    return Z(0);
  }

  /// Largest exponent. Precondition: nonzero.
  [[nodiscard]] int max_degree() const {
    require_nonzero();
    return terms_.back().first;
  }
  [[nodiscard]] int min_degree() const {
    require_nonzero();
    return terms_.front().first;
  }
  [[nodiscard]] const Z& leading_coeff() const {
    require_nonzero();
    return terms_.back().second;
  }

  /// True iff every exponent is even, i.e. the element lies in Z[u, u^-1].
  [[nodiscard]] bool even_support() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.first % 2 == 0; });
  }

  [[nodiscard]] Laurent shifted(int k) const {
    Laurent p = *this;
    for (auto& t : p.terms_) t.first += k;
    return p;
  }

  /// v -> v^-1.
  [[nodiscard]] Laurent bar() const {
    Laurent p;
    p.terms_.reserve(terms_.size());
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) p.terms_.emplace_back(-it->first, it->second);
    return p;
  }

  /// v -> u = v^2: every exponent doubles.
  [[nodiscard]] Laurent subst_v_to_u() const {
    Laurent p = *this;
    for (auto& t : p.terms_) t.first *= 2;
    return p;
  }

  Laurent operator-() const {
    Laurent p = *this;
    for (auto& t : p.terms_) t.second = detail::sub(Z(0), t.second);
    return p;
  }

  Laurent& operator+=(const Laurent& o) { return *this = merge(*this, o, false); }
  Laurent& operator-=(const Laurent& o) { return *this = merge(*this, o, true); }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

  friend Laurent operator+(const Laurent& a, const Laurent& b) { return merge(a, b, false); }
  friend Laurent operator-(const Laurent& a, const Laurent& b) { return merge(a, b, true); }

  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (b.terms_.size() == 1) return a.scaled_term(b.terms_[0]);
    if (a.terms_.size() == 1) return b.scaled_term(a.terms_[0]);
    std::vector<Term> acc;
    acc.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) acc.emplace_back(ea + eb, detail::mul(ca, cb));
    return from_terms(std::move(acc));
  }

  friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

  /// Exact quotient a / d in Z[v, v^-1], or nullopt if d does not divide a.
  [[nodiscard]] std::optional<Laurent> try_divide(const Laurent& d) const {
    if (d.is_zero()) throw std::domain_error("Laurent division by zero");
    if (is_zero()) return Laurent{};
    // Work with ordinary polynomials: shift both so the lowest exponent is 0.
    const int shift = min_degree() - d.min_degree();
    Laurent rem = shifted(-min_degree());
    const Laurent div = d.shifted(-d.min_degree());
    const int ddeg = div.max_degree();
    const Z& lc = div.leading_coeff();
    std::vector<Term> quot;
    while (!rem.is_zero()) {
      const int rdeg = rem.max_degree();
      if (rdeg < ddeg) return std::nullopt;
      const Z& rc = rem.leading_coeff();
      Z q = rc / lc;
      if (!detail::is_zero(detail::sub(rc, detail::mul(q, lc)))) return std::nullopt;
      quot.emplace_back(rdeg - ddeg, q);
      rem -= div.scaled_term({rdeg - ddeg, q});
    }
    return from_terms(std::move(quot)).shifted(shift);
  }

 private:
  std::vector<Term> terms_;

  void require_nonzero() const {
    if (terms_.empty()) throw std::domain_error("degree of the zero Laurent polynomial");
  }

  void normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().first == t.first)
        out.back().second = detail::add(out.back().second, t.second);
      else
        out.push_back(std::move(t));
      if (detail::is_zero(out.back().second)) out.pop_back();
    }
    terms_ = std::move(out);
  }

  [[nodiscard]] Laurent scaled_term(const Term& t) const {
    Laurent p;
    p.terms_.reserve(terms_.size());
    for (const auto& [e, c] : terms_) p.terms_.emplace_back(e + t.first, detail::mul(c, t.second));
    return p;
  }

  static Laurent merge(const Laurent& a, const Laurent& b, bool subtract) {
    Laurent p;
    p.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
        p.terms_.push_back(*i++);
      } else if (i == a.terms_.end() || j->first < i->first) {
        p.terms_.emplace_back(j->first, subtract ? detail::sub(Z(0), j->second) : j->second);
        ++j;
      } else {
        Z c = subtract ? detail::sub(i->second, j->second) : detail::add(i->second, j->second);
        if (!detail::is_zero(c)) p.terms_.emplace_back(i->first, std::move(c));
        ++i;
        ++j;
      }
    }
    return p;
  }
};

using LaurentPoly = Laurent<std::int64_t>;
using BigLaurent = Laurent<BigInt>;

/// Constant term of p viewed in Z[u^-1]; throws std::domain_error when p has
/// positive or odd exponents.
std::int64_t specialize_uinv_zero(const LaurentPoly& p);

/// Coefficient of v^n.
inline std::int64_t coeff_of_v(const LaurentPoly& p, int n) { return p.coeff(n); }

/// Largest k with (u-1)^k dividing p (p nonzero), and the cofactor.
std::pair<int, LaurentPoly> split_u_minus_one(const LaurentPoly& p);

enum class PolyStyle { V, U };

/// Paper-style rendering, descending exponents, e.g. "u^{-2}+u^{-3}-u^{-4}".
/// U style requires even support and prints exponent e/2 of u.
std::string to_string(const LaurentPoly& p, PolyStyle style = PolyStyle::V);
/// U style when the support allows it, V style otherwise.
std::string to_display(const LaurentPoly& p);
std::string to_string(const BigLaurent& p, PolyStyle style = PolyStyle::V);

/// {"v": {"<exponent>": coefficient, ...}}
nlohmann::json to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const nlohmann::json& j);

}  // namespace hinv

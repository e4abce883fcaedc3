#include "hinv/rational.hpp"

#include <limits>

namespace hinv {

namespace {

// Polynomials here are BigLaurent values with min exponent >= 0.

BigInt content(const BigLaurent& p) {
  BigInt g = 0;
  for (const auto& [e, c] : p.terms()) g = boost::multiprecision::gcd(g, c);
  return g;
}

BigLaurent divide_by_integer(const BigLaurent& p, const BigInt& d) {
  std::vector<BigLaurent::Term> terms;
  terms.reserve(p.size());
  for (const auto& [e, c] : p.terms()) terms.emplace_back(e, c / d);
  return BigLaurent::from_terms(std::move(terms));
}

BigLaurent primitive_part(const BigLaurent& p) {
  if (p.is_zero()) return p;
  BigInt c = content(p);
  if (p.leading_coeff() < 0) c = -c;
  return divide_by_integer(p, c);
}

BigLaurent to_polynomial(const BigLaurent& p) { return p.is_zero() ? p : p.shifted(-p.min_degree()); }

// lc(b)^(deg a - deg b + 1) * a mod b.
BigLaurent pseudo_remainder(BigLaurent a, const BigLaurent& b) {
  const int db = b.max_degree();
  const BigInt& lb = b.leading_coeff();
  while (!a.is_zero() && a.max_degree() >= db) {
    const int da = a.max_degree();
    const BigInt la = a.leading_coeff();
    a = a * BigLaurent(lb) - b * BigLaurent::monomial(la, da - db);
  }
  return a;
}

}  // namespace

BigLaurent poly_gcd(const BigLaurent& a_in, const BigLaurent& b_in) {
  if (a_in.is_zero() && b_in.is_zero()) return {};
  if (a_in.is_zero()) return primitive_part(to_polynomial(b_in)) * BigLaurent(content(b_in));
  if (b_in.is_zero()) return primitive_part(to_polynomial(a_in)) * BigLaurent(content(a_in));
  const BigInt cg = boost::multiprecision::gcd(content(a_in), content(b_in));
  BigLaurent a = primitive_part(to_polynomial(a_in));
  BigLaurent b = primitive_part(to_polynomial(b_in));
  if (a.max_degree() < b.max_degree()) std::swap(a, b);
  while (!b.is_zero()) {
    BigLaurent r = pseudo_remainder(a, b);
    a = std::move(b);
    b = primitive_part(to_polynomial(r));
  }
  return primitive_part(a) * BigLaurent(cg);
}

RationalFn::RationalFn(BigLaurent num, BigLaurent den) {
  if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num.is_zero()) {
    num_ = {};
    den_ = BigLaurent(1);
    return;
  }
  const BigLaurent g = poly_gcd(num, den);
  num = *num.try_divide(g);
  den = *den.try_divide(g);
  const int shift = -den.min_degree();
  num = num.shifted(shift);
  den = den.shifted(shift);
  if (den.leading_coeff() < 0) {
    num = -num;
    den = -den;
  }
  num_ = std::move(num);
  den_ = std::move(den);
}

std::optional<BigLaurent> RationalFn::to_big_laurent() const {
  if (den_.size() != 1) return std::nullopt;
  const auto& [e, c] = den_.terms().front();
  if (c != 1) return std::nullopt;
  return num_.shifted(-e);
}

std::optional<LaurentPoly> RationalFn::to_laurent() const {
  auto p = to_big_laurent();
  if (!p) return std::nullopt;
  std::vector<LaurentPoly::Term> terms;
  for (const auto& [e, c] : p->terms()) {
    if (c > BigInt(std::numeric_limits<std::int64_t>::max()) || c < BigInt(std::numeric_limits<std::int64_t>::min()))
      throw std::overflow_error("coefficient does not fit in int64");
    terms.emplace_back(e, static_cast<std::int64_t>(c));
  }
  return LaurentPoly::from_terms(std::move(terms));
}

RationalFn RationalFn::bar() const { return {num_.bar(), den_.bar()}; }

RationalFn RationalFn::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero rational function");
  return {den_, num_};
}

RationalFn operator+(const RationalFn& a, const RationalFn& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
  return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

RationalFn operator*(const RationalFn& a, const RationalFn& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.den_ == BigLaurent(1) && b.den_ == BigLaurent(1))
    return RationalFn(a.num_ * b.num_, BigLaurent(1), RationalFn::Normalized{});
  return {a.num_ * b.num_, a.den_ * b.den_};
}

std::string to_string(const RationalFn& f) {
  if (f.denominator() == BigLaurent(1)) return to_string(f.numerator());
  return "(" + to_string(f.numerator()) + ")/(" + to_string(f.denominator()) + ")";
}

}  // namespace hinv

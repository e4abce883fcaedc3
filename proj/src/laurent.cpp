#include "hinv/laurent.hpp"

#include <sstream>

namespace hinv {

std::int64_t specialize_uinv_zero(const LaurentPoly& p) {
  for (const auto& [e, c] : p.terms()) {
    if (e % 2 != 0) throw std::domain_error("coefficient has odd v-exponent: not in Z[u^-1]");
    if (e > 0) throw std::domain_error("coefficient has positive u-exponent: not in Z[u^-1]");
  }
  return p.coeff(0);
}

std::pair<int, LaurentPoly> split_u_minus_one(const LaurentPoly& p) {
  if (p.is_zero()) throw std::domain_error("split_u_minus_one of zero");
  const LaurentPoly u_minus_one = LaurentPoly::u_power(1) - LaurentPoly(1);
  int k = 0;
  LaurentPoly rest = p;
  while (auto q = rest.try_divide(u_minus_one)) {
    rest = std::move(*q);
    ++k;
  }
  return {k, rest};
}

namespace {

template <class Z>
std::string render(const Laurent<Z>& p, PolyStyle style) {
  if (p.is_zero()) return "0";
  const char var = style == PolyStyle::U ? 'u' : 'v';
  std::ostringstream out;
  bool first = true;
  const auto& terms = p.terms();
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    int e = it->first;
    if (style == PolyStyle::U) {
      if (e % 2 != 0) throw std::domain_error("u-style rendering of odd exponent");
      e /= 2;
    }
    Z c = it->second;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (negative)
      out << '-';
    else if (!first)
      out << '+';
    first = false;
    if (e == 0) {
      out << c;
      continue;
    }
    if (c != 1) out << c;
    out << var;
    if (e != 1) out << "^{" << e << '}';
  }
  return out.str();
}

}  // namespace

std::string to_string(const LaurentPoly& p, PolyStyle style) { return render(p, style); }
std::string to_string(const BigLaurent& p, PolyStyle style) { return render(p, style); }

std::string to_display(const LaurentPoly& p) {
  return to_string(p, p.even_support() ? PolyStyle::U : PolyStyle::V);
}

nlohmann::json to_json(const LaurentPoly& p) {
  nlohmann::json terms = nlohmann::json::object();
  for (const auto& [e, c] : p.terms()) terms[std::to_string(e)] = c;
  return nlohmann::json{{"v", terms}};
}

LaurentPoly laurent_from_json(const nlohmann::json& j) {
  std::vector<LaurentPoly::Term> terms;
  for (const auto& [key, value] : j.at("v").items()) terms.emplace_back(std::stoi(key), value.get<std::int64_t>());
  return LaurentPoly::from_terms(std::move(terms));
}

}  // namespace hinv

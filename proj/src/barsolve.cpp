#include "hinv/barsolve.hpp"

namespace hinv {

std::vector<LaurentPoly> solve_bar_invariant(std::size_t n,
                                             const std::function<LaurentPoly(std::size_t, std::size_t)>& R) {
  std::vector<LaurentPoly> p(n);
  if (n == 0) return p;
  p[n - 1] = LaurentPoly(1);
  // p_z - bar(p_z) = sum_{y > z} bar(p_y) R(z, y); p_z is the negative part.
  for (std::size_t z = n - 1; z-- > 0;) {
    LaurentPoly q;
    for (std::size_t y = z + 1; y < n; ++y) {
      if (p[y].is_zero()) continue;
      const LaurentPoly r = R(z, y);
      if (!r.is_zero()) q += p[y].bar() * r;
    }
    if (q.is_zero()) continue;
    if (q.bar() != -q) throw std::logic_error("bar-invariance solve: right-hand side is not anti-invariant");
    std::vector<LaurentPoly::Term> neg;
    for (const auto& t : q.terms())
      if (t.first < 0) neg.push_back(t);
    p[z] = LaurentPoly::from_terms(std::move(neg));
  }
  return p;
}

}  // namespace hinv

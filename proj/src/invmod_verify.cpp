#include <random>
#include <set>

#include "hinv/invmod.hpp"

namespace hinv::invmod {

namespace {

using nlohmann::json;

ModuleElement basis(ElementId w) { return ModuleElement{{w, LaurentPoly(1)}}; }

ModuleElement combine(const ModuleElement& a, const LaurentPoly& ca, const ModuleElement& b, const LaurentPoly& cb) {
  ModuleElement out;
  for (const auto& [w, c] : a) add_to(out, w, ca * c);
  for (const auto& [w, c] : b) add_to(out, w, cb * c);
  return out;
}

std::string word(const ElementTable& t, ElementId x) { return t.element(x).to_string(); }

}  // namespace

Report verify_module(const InvolutionModule& M) {
  const auto& t = M.table();
  const auto& sys = t.system();
  Report rep("invmod-module", sys.label());
  const LaurentPoly u2 = LaurentPoly::u_power(2);
  const LaurentPoly uinv2 = LaurentPoly::u_power(-2);

  auto& quad = rep.add("quadratic", "(T_s+1)(T_s-u^2) = 0 on M");
  auto& braid = rep.add("braid", "braid relations on M");
  for (auto w : M.involutions()) {
    const auto a = basis(w);
    for (int s = 0; s < sys.rank(); ++s) {
      try {
        const auto ta = M.ts_action(s, a);
        const auto tta = M.ts_action(s, ta);
        // T_s^2 + (1 - u^2) T_s - u^2
        ModuleElement r = combine(tta, 1, ta, LaurentPoly(1) - u2);
        for (const auto& [y, c] : a) add_to(r, y, -u2 * c);
        Report::record(quad, r.empty(), json{{"s", s + 1}, {"w", word(t, w)}});
      } catch (const std::out_of_range&) {
      }
      for (int r = s + 1; r < sys.rank(); ++r) {
        const int m = sys.m(s, r);
        if (m == coxeter::kInfinity) continue;
        try {
          ModuleElement left = a, right = a;
          for (int k = 0; k < m; ++k) {
            left = M.ts_action(k % 2 == 0 ? s : r, left);
            right = M.ts_action(k % 2 == 0 ? r : s, right);
          }
          Report::record(braid, left == right, json{{"s", s + 1}, {"t", r + 1}, {"w", word(t, w)}});
        } catch (const std::out_of_range&) {
        }
      }
    }
  }

  auto& inv = rep.add("bar-involution", "bar(bar(a_w)) = a_w");
  auto& indep = rep.add("bar-descent-independence", "bar(a_w) independent of the chosen left descent");
  auto& tri = rep.add("bar-unitriangular", "bar(a_w) = u^{-l(w)} a_w + lower terms, supported on y <= w");
  auto& semi = rep.add("bar-semilinear", "bar(T_s m) = bar(T_s) bar(m)");
  auto& abar = rep.add("A-bar-invariant", "bar(A_w) = A_w");
  auto& atri = rep.add("A-triangular", "P^sigma_{w,w} = 1, degree bound, integral, support y <= w");
  for (auto w : M.involutions()) {
    if (t.length(w) > M.bar_length_bound()) break;
    const int lw = static_cast<int>(t.length(w));
    const auto& b = M.bar_a(w);
    const json wit{{"w", word(t, w)}};
    Report::record(inv, M.bar_m(b) == basis(w), wit);
    for (int s = 0; s < sys.rank(); ++s)
      if (t.is_left_descent(s, w)) Report::record(indep, M.bar_a_via(w, s) == b, json{{"w", word(t, w)}, {"s", s + 1}});
    bool ok = b.count(w) && b.at(w) == LaurentPoly::u_power(-lw);
    for (const auto& [y, c] : b) ok = ok && t.bruhat_leq(y, w);
    Report::record(tri, ok, wit);
    for (int s = 0; s < sys.rank(); ++s) {
      try {
        const auto tsa = M.ts_action(s, basis(w));
        bool fits = true;
        for (const auto& [y, c] : tsa) fits = fits && t.length(y) <= M.bar_length_bound();
        if (!fits) continue;
        const auto lhs = M.bar_m(tsa);
        const auto rhs = combine(M.ts_action(s, b), uinv2, b, uinv2 - 1);
        Report::record(semi, lhs == rhs, json{{"w", word(t, w)}, {"s", s + 1}});
      } catch (const std::out_of_range&) {
      }
    }
    const auto& A = M.A(w);
    Report::record(abar, M.bar_m(A) == A, wit);
    bool tri_ok = M.P_sigma(w, w) == LaurentPoly(1);
    for (const auto& [y, c] : A) {
      const auto P = M.P_sigma(y, w);
      tri_ok = tri_ok && t.bruhat_leq(y, w) && P.even_support() && P.min_degree() >= 0;
      if (y != w) tri_ok = tri_ok && P.max_degree() / 2 <= (lw - static_cast<int>(t.length(y)) - 1) / 2;
    }
    Report::record(atri, tri_ok, wit);
  }
  return rep;
}

Report verify_section1(const CmModule& cm, const Section1Options& options) {
  const auto& M = cm.module();
  const auto& cells = cm.cells();
  const auto& H = M.hecke();
  const auto& t = M.table();
  const auto& I = M.involutions();
  Report rep("invmod-section1", t.system().label());

  auto& lead = rep.add("leading-term", "f_{x,w,w'} in beta v^{2a(w')} + v^{2a(w')-1} Z[v^-1]");
  auto& bcell = rep.add("beta-cells", "beta_{x,w,w'} != 0 implies x ~ w ~ w'");
  auto& supp = rep.add("f-support", "f_{x,w,w'} != 0 implies w' <=_LR w and w' <=_LR x");
  auto& sign = rep.add("sign-structure", "f = H+ - H- with H = H+ + H-, H+- nonnegative");
  auto& hzero = rep.add("H-zero", "zero coefficient of H forces zero coefficient of f");
  auto& hone = rep.add("H-one", "unit coefficient of H forces coefficient +-1 of f");
  for (auto x : t.ids())
    for (auto w : I)
      for (auto w2 : I) {
        const LaurentPoly f = cm.f(x, w).count(w2) ? cm.f(x, w).at(w2) : LaurentPoly();
        const int a2 = 2 * cells.a(w2);
        const json wit{{"x", word(t, x)}, {"w", word(t, w)}, {"w2", word(t, w2)}, {"f", to_string(f)}};
        Report::record(lead, f.is_zero() || f.max_degree() <= a2, wit);
        if (cm.beta(x, w, w2) != 0)
          Report::record(bcell, cells.same_two_sided(x, w) && cells.same_two_sided(w, w2), wit);
        if (!f.is_zero()) Report::record(supp, cells.leq_LR(w2, w) && cells.leq_LR(w2, x), wit);
        const LaurentPoly Hx = H.triple_H(x, w, w2);
        bool sign_ok = true, zero_ok = true, one_ok = true;
        std::set<int> exps;
        for (const auto& [e, c] : f.terms()) exps.insert(e);
        for (const auto& [e, c] : Hx.terms()) exps.insert(e);
        for (int e : exps) {
          const auto fe = f.coeff(e), he = Hx.coeff(e);
          sign_ok = sign_ok && he >= 0 && (fe < 0 ? -fe : fe) <= he && (he - fe) % 2 == 0;
          if (he == 0) zero_ok = zero_ok && fe == 0;
          if (he == 1) one_ok = one_ok && (fe == 1 || fe == -1);
        }
        Report::record(sign, sign_ok, json{{"x", word(t, x)}, {"w", word(t, w)}, {"w2", word(t, w2)}, {"f", to_string(f)}, {"H", to_string(Hx)}});
        Report::record(hzero, zero_ok, wit);
        Report::record(hone, one_ok, wit);
      }

  // Associativity: sum_{y'} gamma_{x,y,y'^-1} beta_{y',w,w'} = sum_z beta_{x,z,w'} beta_{y,w,z}.
  auto& assoc = rep.add("associativity", "(t_x t_y) tau_w = t_x (t_y tau_w)");
  auto check_triple = [&](ElementId x, ElementId y, ElementId w) {
    const cells::JElement tx{{x, 1}}, ty{{y, 1}};
    const CmElement tw{{w, 1}};
    const auto lhs = cm.cm_action(cells.j_mult(tx, ty), tw);
    const auto rhs = cm.cm_action(tx, cm.cm_action(ty, tw));
    Report::record(assoc, lhs == rhs, json{{"x", word(t, x)}, {"y", word(t, y)}, {"w", word(t, w)}});
  };
  if (options.random_triples == 0) {
    for (auto x : t.ids())
      for (auto y : t.ids())
        for (auto w : I) check_triple(x, y, w);
  } else {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::uint32_t> px(0, static_cast<std::uint32_t>(t.size() - 1));
    std::uniform_int_distribution<std::size_t> pw(0, I.size() - 1);
    for (std::size_t k = 0; k < options.random_triples; ++k) check_triple(ElementId{px(rng)}, ElementId{px(rng)}, I[pw(rng)]);
  }

  auto& unit = rep.add("unit", "sum_{d in D} beta_{d,w,w'} = delta_{w,w'}");
  auto& hlead = rep.add("H-leading-unit", "coefficient of v^{2a(w')} in H_{d0,w,w'} is delta_{w,w'}");
  const auto& part = cells.partition();
  for (auto w : I) {
    ElementId d0{};
    for (auto z : part.left[part.left_of[t.inverse(w).value]])
      if (cells.is_distinguished(z)) d0 = z;
    for (auto w2 : I) {
      std::int64_t sum = 0;
      for (auto d : cells.distinguished()) sum += cm.beta(d, w, w2);
      const json wit{{"w", word(t, w)}, {"w2", word(t, w2)}};
      Report::record(unit, sum == (w == w2 ? 1 : 0), wit);
      Report::record(hlead, H.triple_H(d0, w, w2).coeff(2 * cells.a(w2)) == (w == w2 ? 1 : 0), wit);
    }
  }

  auto& blocks = rep.add("two-sided-blocks", "J_c cm_c' = 0 for c != c', J_c cm_c in cm_c, unital");
  for (const auto& b : cells.two_sided_blocks()) {
    for (auto x : b.basis)
      for (auto w : I) {
        const auto& act = cm.basis_action(x, w);
        bool ok = true;
        if (!cells.same_two_sided(x, w)) {
          ok = act.empty();
        } else {
          for (const auto& [w2, c] : act) ok = ok && cells.same_two_sided(w2, w);
        }
        Report::record(blocks, ok, json{{"x", word(t, x)}, {"w", word(t, w)}});
      }
    for (auto w : I)
      if (cells.same_two_sided(b.basis.front(), w))
        Report::record(blocks, cm.cm_action(b.unit, CmElement{{w, 1}}) == CmElement{{w, 1}},
                       json{{"unit_of_cell", word(t, b.basis.front())}, {"w", word(t, w)}});
  }

  auto& lcell = rep.add("left-cell-restriction",
                        "J_{l cap l^-1} acts unitally on cm_{l cap l^-1}; t_{d'} tau_w = 0 for d' outside l");
  for (const auto& lb : cells.left_cell_blocks()) {
    if (!lb.star_stable) continue;
    const std::set<ElementId> span(lb.basis.begin(), lb.basis.end());
    for (auto w : lb.basis) {
      if (!M.in_I(w)) continue;
      for (auto x : lb.basis)
        for (const auto& [w2, c] : cm.basis_action(x, w))
          Report::record(lcell, span.count(w2) > 0, json{{"x", word(t, x)}, {"w", word(t, w)}, {"w2", word(t, w2)}});
      Report::record(lcell, cm.cm_action(lb.unit, CmElement{{w, 1}}) == CmElement{{w, 1}},
                     json{{"unit", word(t, lb.distinguished)}, {"w", word(t, w)}});
      for (auto d : cells.distinguished())
        if (!span.count(d) && part.left_of[d.value] != lb.left_cell)
          Report::record(lcell, cm.basis_action(d, w).empty(), json{{"d", word(t, d)}, {"w", word(t, w)}});
    }
  }
  return rep;
}

}  // namespace hinv::invmod

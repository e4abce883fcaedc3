#include "hinv/suites.hpp"

#include <random>

#include "hinv/barsolve.hpp"

namespace hinv::suites {

using coxeter::ElementId;
using nlohmann::json;

namespace {

std::string word(const coxeter::ElementTable& t, ElementId x) { return t.element(x).to_string(); }

}  // namespace

Report kl_suite(const hecke::HeckeAlgebra& H) {
  const auto& t = H.table();
  Report rep("kl", t.system().label());
  auto& agree = rep.add("recursion-vs-solver", "P_{y,w} by recursion equals the bar-invariant triangular solution");
  auto& support = rep.add("bruhat-support", "P_{y,w} = 0 unless y <= w, P_{w,w} = 1");
  auto& degree = rep.add("degree-bound", "deg_u P_{y,w} <= (l(w) - l(y) - 1)/2, constant term 1, even support in v");

  // bar(T_x) along the last letter: bar(T_{x's}) = bar(T_x') (u^-1 T_s + (u^-1 - 1))
  std::vector<hecke::HeckeElement> bar(t.size());
  bar[0] = hecke::HeckeElement::basis_element(t.identity());
  const LaurentPoly uinv = LaurentPoly::u_power(-1);
  for (auto x : t.ids()) {
    if (x == t.identity()) continue;
    const int s = t.element(x).word().back();
    const auto& rest = bar[t.right_in(x, s).value];
    bar[x.value] = uinv * H.t_mult_right_s(rest, s) + (uinv - 1) * rest;
  }
  for (auto w : t.ids()) {
    // basis v^{-l(y)} T_y, y <= w in table order
    const std::size_t n = w.value + 1;
    auto R = [&](std::size_t z, std::size_t y) {
      const ElementId Z{static_cast<std::uint32_t>(z)}, Y{static_cast<std::uint32_t>(y)};
      return bar[y].coeff(Z).shifted(static_cast<int>(t.length(Y) + t.length(Z)));
    };
    std::vector<LaurentPoly> p;
    try {
      p = solve_bar_invariant(n, R);
    } catch (const std::logic_error&) {
      Report::record(agree, false, json{{"w", word(t, w)}, {"error", "no bar-invariant solution"}});
      continue;
    }
    for (auto y : t.ids()) {
      if (y > w) break;
      const auto P = p[y.value].shifted(static_cast<int>(t.length(w) - t.length(y)));
      const auto& got = H.kl_poly(y, w);
      Report::record(agree, got == P, json{{"y", word(t, y)}, {"w", word(t, w)}, {"recursion", to_json(got)}, {"solver", to_json(P)}});
      if (!t.bruhat_leq(y, w)) {
        Report::record(support, got.is_zero(), json{{"y", word(t, y)}, {"w", word(t, w)}});
        continue;
      }
      if (y == w) {
        Report::record(support, got == LaurentPoly(1), json{{"w", word(t, w)}});
        continue;
      }
      const int bound = (static_cast<int>(t.length(w) - t.length(y)) - 1) / 2;
      const bool ok = !got.is_zero() && got.even_support() && got.min_degree() == 0 && got.coeff(0) == 1 &&
                      got.max_degree() / 2 <= bound;
      Report::record(degree, ok, json{{"y", word(t, y)}, {"w", word(t, w)}, {"P", to_json(got)}});
    }
  }
  return rep;
}

std::vector<std::pair<ElementId, ElementId>> nontrivial_kl(const hecke::HeckeAlgebra& H) {
  const auto& t = H.table();
  std::vector<std::pair<ElementId, ElementId>> out;
  for (auto w : t.ids())
    for (auto y : t.ids()) {
      if (y > w) break;
      const auto& p = H.kl_poly(y, w);
      if (!p.is_zero() && p != LaurentPoly(1)) out.emplace_back(y, w);
    }
  return out;
}

Report jring_suite(const cells::CellData& C, const JOptions& options) {
  const auto& t = C.table();
  Report rep("jring", t.system().label());
  auto& assoc = rep.add("associativity", "(t_x t_y) t_z = t_x (t_y t_z)");
  auto& unit = rep.add("unit", "sum of distinguished t_d is a two-sided unit");
  auto& cross = rep.add("cell-orthogonality", "t_x t_y = 0 unless x, y lie in one two-sided cell");
  auto& gsupport = rep.add("gamma-support", "gamma_{x,y,z} != 0 implies x ~ y ~ z");
  auto& blocks = rep.add("two-sided-blocks", "J_c closed with unit 1_c, units sum to 1");
  auto& lblocks = rep.add("left-cell-blocks", "J_{lambda cap lambda^-1} closed with unit t_d");
  const auto one = C.j_unit();
  const auto ids = t.ids();
  for (auto x : ids) {
    const cells::JElement tx{{x, 1}};
    Report::record(unit, C.j_mult(one, tx) == tx && C.j_mult(tx, one) == tx, json{{"x", word(t, x)}});
    for (auto y : ids) {
      const auto& p = C.j_basis_product(x, y);
      if (!C.same_two_sided(x, y)) Report::record(cross, p.empty(), json{{"x", word(t, x)}, {"y", word(t, y)}});
      for (const auto& [z, c] : p)
        if (c != 0) Report::record(gsupport, C.same_two_sided(y, z), json{{"x", word(t, x)}, {"y", word(t, y)}, {"z", word(t, z)}});
    }
  }
  auto triple = [&](ElementId x, ElementId y, ElementId z) {
    const cells::JElement a{{x, 1}}, b{{y, 1}}, c{{z, 1}};
    Report::record(assoc, C.j_mult(C.j_mult(a, b), c) == C.j_mult(a, C.j_mult(b, c)),
                   json{{"x", word(t, x)}, {"y", word(t, y)}, {"z", word(t, z)}});
  };
  if (options.random_triples == 0) {
    for (auto x : ids)
      for (auto y : ids)
        for (auto z : ids) triple(x, y, z);
  } else {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(t.size() - 1));
    for (std::size_t k = 0; k < options.random_triples; ++k) triple(ElementId{pick(rng)}, ElementId{pick(rng)}, ElementId{pick(rng)});
  }
  cells::JElement sum;
  for (const auto& b : C.two_sided_blocks()) {
    Report::record(blocks, b.closed && b.unit_ok, json{{"first", word(t, b.basis.front())}});
    for (const auto& [x, c] : b.unit) sum[x] += c;
  }
  Report::record(blocks, sum == one, json{{"units", "do not sum to 1"}});
  for (const auto& b : C.left_cell_blocks())
    Report::record(lblocks, b.closed && b.unit_ok, json{{"left_cell", b.left_cell}, {"d", word(t, b.distinguished)}});
  return rep;
}

}  // namespace hinv::suites

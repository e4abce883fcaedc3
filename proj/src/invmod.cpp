#include "hinv/invmod.hpp"

#include <random>
#include <set>

#include "hinv/barsolve.hpp"

namespace hinv::invmod {

namespace {

using coxeter::kOutside;

const LaurentPoly& u1() {
  static const LaurentPoly p = LaurentPoly::u_power(1);
  return p;
}

template <class C>
C lift(const LaurentPoly& p);
template <>
LaurentPoly lift<LaurentPoly>(const LaurentPoly& p) {
  return p;
}
template <>
RationalFn lift<RationalFn>(const LaurentPoly& p) {
  return RationalFn(p);
}

template <class C>
ModElem<C> scaled(const C& c, const ModElem<C>& m) {
  ModElem<C> out;
  for (const auto& [w, a] : m) add_to(out, w, c * a);
  return out;
}

template <class C>
void accumulate(ModElem<C>& acc, const ModElem<C>& m) {
  for (const auto& [w, a] : m) add_to(acc, w, a);
}

ModuleElement basis(ElementId w) { return ModuleElement{{w, LaurentPoly(1)}}; }

ElementId step(std::uint32_t r) {
  if (r == kOutside) throw std::out_of_range("module action leaves the enumerated window");
  return ElementId{r};
}

}  // namespace

InvolutionModule::InvolutionModule(std::shared_ptr<const hecke::HeckeAlgebra> H) : H_(std::move(H)) {
  const auto& t = table();
  in_I_.assign(t.size(), false);
  for (auto x : t.ids())
    if (t.star(x) == t.inverse(x)) {
      involutions_.push_back(x);
      in_I_[x.value] = true;
    }
  bar_bound_ = t.complete() ? t.max_length() : (t.max_length() == 0 ? 0 : t.max_length() - 1);

  bar_.resize(t.size());
  for (auto w : involutions_) {
    if (t.length(w) > bar_bound_) break;
    if (w == t.identity()) {
      bar_[w.value] = basis(w);
      continue;
    }
    int s = 0;
    while (!t.is_left_descent(s, w)) ++s;
    bar_[w.value] = bar_a_via(w, s);
  }

  A_.resize(t.size());
  std::vector<ElementId> below;
  for (auto w : involutions_) {
    if (t.length(w) > bar_bound_) break;
    below.push_back(w);  // involutions with id <= w, in order
    const std::size_t n = below.size();
    auto R = [&](std::size_t z, std::size_t y) -> LaurentPoly {
      const auto& b = bar_[below[y].value];
      auto it = b.find(below[z]);
      if (it == b.end()) return {};
      return it->second.shifted(static_cast<int>(t.length(below[y]) + t.length(below[z])));
    };
    const auto& bw = bar_[w.value];
    auto diag = bw.find(w);
    if (diag == bw.end() || diag->second != LaurentPoly::v_power(-2 * static_cast<int>(t.length(w))))
      throw std::logic_error("bar(a_w) is not unitriangular at " + t.element(w).to_string());
    const auto p = solve_bar_invariant(n, R);
    const int lw = static_cast<int>(t.length(w));
    ModuleElement Aw;
    for (std::size_t k = 0; k < n; ++k) {
      if (p[k].is_zero()) continue;
      const int ly = static_cast<int>(t.length(below[k]));
      const LaurentPoly P = p[k].shifted(lw - ly);
      if (!P.even_support() || P.min_degree() < 0)
        throw std::logic_error("P^sigma is not a polynomial in u at " + t.element(w).to_string());
      add_to(Aw, below[k], p[k].shifted(-ly));
    }
    A_[w.value] = std::move(Aw);
  }
}

template <class C>
ModElem<C> InvolutionModule::ts_generic(int s, const ModElem<C>& m) const {
  const auto& t = table();
  const LaurentPoly& u = u1();
  const LaurentPoly u2 = u * u;
  const int ss = t.system().star_of(s);
  ModElem<C> out;
  for (const auto& [w, c] : m) {
    const ElementId sw = step(t.left(s, w));
    const ElementId wss = step(t.right(w, ss));
    const bool up = !t.is_left_descent(s, w);
    if (sw == wss) {
      if (up) {
        add_to(out, w, lift<C>(u) * c);
        add_to(out, sw, lift<C>(u + 1) * c);
      } else {
        add_to(out, w, lift<C>(u2 - u - 1) * c);
        add_to(out, sw, lift<C>(u2 - u) * c);
      }
    } else {
      const ElementId sws = step(t.right(sw, ss));
      if (up) {
        add_to(out, sws, c);
      } else {
        add_to(out, w, lift<C>(u2 - 1) * c);
        add_to(out, sws, lift<C>(u2) * c);
      }
    }
  }
  return out;
}

template ModElem<LaurentPoly> InvolutionModule::ts_generic(int, const ModElem<LaurentPoly>&) const;
template ModElem<RationalFn> InvolutionModule::ts_generic(int, const ModElem<RationalFn>&) const;

ModuleElement InvolutionModule::t_action(ElementId x, const ModuleElement& m) const {
  ModuleElement out = m;
  const auto& word = table().element(x).word();
  for (auto it = word.rbegin(); it != word.rend(); ++it) out = ts_action(*it, out);
  return out;
}

ModuleElement InvolutionModule::h_action(const hecke::HeckeElement& h, const ModuleElement& m) const {
  ModuleElement out;
  for (const auto& [x, c] : h.coeffs) accumulate(out, scaled(c, t_action(x, m)));
  return out;
}

hecke::HeckeElement InvolutionModule::c_frak(ElementId x) const {
  hecke::HeckeElement out;
  for (const auto& [y, c] : H_->c_elt(x).coeffs) out.add(y, c.subst_v_to_u());
  return out;
}

ModuleElement InvolutionModule::c_action(ElementId x, const ModuleElement& m) const {
  return h_action(c_frak(x), m);
}

void InvolutionModule::require_bar(ElementId w) const {
  if (!in_I(w)) throw std::invalid_argument("element is not a twisted involution");
  if (table().length(w) > bar_bound_) throw std::out_of_range("bar(a_w) beyond the computed length bound");
}

const ModuleElement& InvolutionModule::bar_a(ElementId w) const {
  require_bar(w);
  return bar_[w.value];
}

ModuleElement InvolutionModule::bar_a_via(ElementId w, int s) const {
  const auto& t = table();
  if (!in_I(w)) throw std::invalid_argument("element is not a twisted involution");
  if (!t.is_left_descent(s, w)) throw std::invalid_argument("bar recursion needs a left descent");
  const LaurentPoly& u = u1();
  const LaurentPoly uinv = LaurentPoly::u_power(-1);
  const LaurentPoly uinv2 = LaurentPoly::u_power(-2);
  const int ss = t.system().star_of(s);
  const ElementId sw = t.left_in(s, w);
  const ElementId wss = t.right_in(w, ss);
  if (sw == wss) {
    // a_w = (u+1)^-1 (T_s - u) a_{sw}
    RationalModuleElement b;
    for (const auto& [y, c] : bar_[sw.value]) b.emplace(y, RationalFn(c));
    RationalModuleElement r = scaled(RationalFn(uinv2), ts_action(s, b));
    accumulate(r, scaled(RationalFn(uinv2 - 1 - uinv), b));
    r = scaled(RationalFn(BigLaurent::convert(u), BigLaurent::convert(u + 1)), r);
    ModuleElement out;
    for (const auto& [y, c] : r) {
      auto p = c.to_laurent();
      if (!p) throw std::logic_error("bar(a_w) has a non-integral coefficient at " + t.element(w).to_string());
      add_to(out, y, *p);
    }
    return out;
  }
  // a_w = T_s a_{s w s*}
  const auto& b = bar_[t.right_in(sw, ss).value];
  ModuleElement out = scaled(uinv2, ts_action(s, b));
  accumulate(out, scaled(uinv2 - 1, b));
  return out;
}

ModuleElement InvolutionModule::bar_m(const ModuleElement& m) const {
  ModuleElement out;
  for (const auto& [w, c] : m) accumulate(out, scaled(c.bar(), bar_a(w)));
  return out;
}

const ModuleElement& InvolutionModule::A(ElementId w) const {
  require_bar(w);
  return A_[w.value];
}

LaurentPoly InvolutionModule::P_sigma(ElementId y, ElementId w) const {
  const auto& Aw = A(w);
  auto it = Aw.find(y);
  if (it == Aw.end()) return {};
  return it->second.shifted(static_cast<int>(table().length(w)));
}

ModuleElement InvolutionModule::to_A_basis(const ModuleElement& m) const {
  ModuleElement rest = m;
  ModuleElement out;
  while (!rest.empty()) {
    const auto [z, c] = *rest.rbegin();
    const LaurentPoly coord = c.shifted(static_cast<int>(table().length(z)));
    add_to(out, z, coord);
    accumulate(rest, scaled(-coord, A(z)));
  }
  return out;
}

ModuleElement InvolutionModule::f_constants(ElementId x, ElementId w) const {
  return to_A_basis(c_action(x, A(w)));
}

// ---------------------------------------------------------------------------
// CmModule

CmModule::CmModule(std::shared_ptr<const InvolutionModule> M, std::shared_ptr<const cells::CellData> cells)
    : M_(std::move(M)), cells_(std::move(cells)) {
  const auto& t = M_->table();
  if (!t.complete()) throw std::invalid_argument("cm needs a finite Coxeter group");
  const std::size_t n = t.size();
  f_.assign(n, std::vector<ModuleElement>(n));
  action_.assign(n, std::vector<CmElement>(n));
  for (auto x : t.ids())
    for (auto w : M_->involutions()) {
      f_[x.value][w.value] = M_->f_constants(x, w);
      CmElement& row = action_[x.value][w.value];
      for (const auto& [w2, c] : f_[x.value][w.value]) {
        const auto b = c.coeff(2 * cells_->a(w2));
        if (b != 0) row[w2] = b;
      }
    }
}

std::int64_t CmModule::beta(ElementId x, ElementId w, ElementId w2) const {
  const auto& row = action_[x.value][w.value];
  auto it = row.find(w2);
  return it == row.end() ? 0 : it->second;
}

CmElement CmModule::cm_action(const cells::JElement& j, const CmElement& tau) const {
  CmElement out;
  for (const auto& [x, cx] : j)
    for (const auto& [w, cw] : tau)
      for (const auto& [w2, b] : basis_action(x, w)) {
        auto& slot = out[w2];
        slot = detail::add(slot, detail::mul(detail::mul(cx, cw), b));
        if (slot == 0) out.erase(w2);
      }
  return out;
}

nlohmann::json module_to_json(const ElementTable& t, const ModuleElement& m) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [w, c] : m)
    out.push_back({{"w", t.element(w).to_string()}, {"c", to_display(c)}, {"c_coeffs", to_json(c)}});
  return out;
}

nlohmann::json a_basis_to_json(const InvolutionModule& M) {
  const auto& t = M.table();
  nlohmann::json rows = nlohmann::json::array();
  for (auto w : M.involutions()) {
    if (t.length(w) > M.bar_length_bound()) break;
    nlohmann::json p = nlohmann::json::array();
    for (const auto& [y, c] : M.A(w)) {
      const auto P = M.P_sigma(y, w);
      p.push_back({{"y", t.element(y).to_string()}, {"P", to_string(P, PolyStyle::U)}});
    }
    rows.push_back({{"w", t.element(w).to_string()},
                    {"bar_a", module_to_json(t, M.bar_a(w))},
                    {"P_sigma", p}});
  }
  return rows;
}

nlohmann::json CmModule::to_json() const {
  const auto& t = M_->table();
  nlohmann::json f_rows = nlohmann::json::array();
  nlohmann::json beta_rows = nlohmann::json::array();
  for (auto x : t.ids())
    for (auto w : M_->involutions()) {
      for (const auto& [w2, c] : f(x, w))
        f_rows.push_back({{"x", t.element(x).to_string()},
                          {"w", t.element(w).to_string()},
                          {"w2", t.element(w2).to_string()},
                          {"f", to_string(c)}});
      for (const auto& [w2, b] : basis_action(x, w))
        beta_rows.push_back({{"x", t.element(x).to_string()},
                             {"w", t.element(w).to_string()},
                             {"w2", t.element(w2).to_string()},
                             {"beta", b}});
    }
  return {{"f", f_rows}, {"beta", beta_rows}};
}

}  // namespace hinv::invmod

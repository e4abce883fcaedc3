#include "hinv/idealmod.hpp"

#include <set>

namespace hinv::idealmod {

namespace {

using coxeter::kOutside;
using nlohmann::json;

RationalFn u_pow(int k) { return RationalFn(LaurentPoly::u_power(k)); }

std::string word(const ElementTable& t, ElementId x) { return t.element(x).to_string(); }

void trim(CompletionElement& e, const ElementTable& t) {
  if (!e.truncated) return;
  for (auto it = e.coeffs.begin(); it != e.coeffs.end();)
    it = t.length(it->first) > e.exact_length ? e.coeffs.erase(it) : std::next(it);
}

// Incremental row echelon form over Q(u). Each stored row remembers the
// combination of input rows it came from, so a dependent input row yields a
// kernel vector of the input matrix.
class Echelon {
 public:
  using Row = std::map<std::size_t, RationalFn>;  // column -> entry

  /// Reduces `row` (input index `tag`); returns the kernel combination if it
  /// becomes zero, nullopt if it was independent (and is then stored).
  std::optional<Row> add(Row row, std::size_t tag) {
    Row comb{{tag, RationalFn(1)}};
    for (const auto& [pivot, stored] : rows_) {
      auto it = row.find(pivot);
      if (it == row.end()) continue;
      const RationalFn f = it->second;  // stored rows have pivot entry 1
      axpy(row, -f, stored.first);
      axpy(comb, -f, stored.second);
    }
    if (row.empty()) return comb;
    const auto [pivot, lead] = *row.begin();
    const RationalFn inv = lead.inverse();
    scale(row, inv);
    scale(comb, inv);
    // keep fully reduced: clear the new pivot column from earlier rows
    for (auto& [p, stored] : rows_) {
      auto it = stored.first.find(pivot);
      if (it == stored.first.end()) continue;
      const RationalFn f = it->second;
      axpy(stored.first, -f, row);
      axpy(stored.second, -f, comb);
    }
    rows_.emplace(pivot, std::make_pair(std::move(row), std::move(comb)));
    return std::nullopt;
  }
  [[nodiscard]] std::size_t rank() const { return rows_.size(); }

  static void axpy(Row& y, const RationalFn& a, const Row& x) {
    for (const auto& [k, c] : x) {
      auto [it, inserted] = y.emplace(k, a * c);
      if (!inserted) {
        it->second += a * c;
        if (it->second.is_zero()) y.erase(it);
      }
    }
  }
  static void scale(Row& y, const RationalFn& a) {
    for (auto& [k, c] : y) c *= a;
  }

 private:
  std::map<std::size_t, std::pair<Row, Row>> rows_;
};

Echelon::Row as_row(const CompletionElement& e, std::size_t offset = 0) {
  Echelon::Row r;
  for (const auto& [x, c] : e.coeffs) r.emplace(offset + x.value, c);
  return r;
}

Echelon::Row as_row(const invmod::ModuleElement& m, std::size_t offset) {
  Echelon::Row r;
  for (const auto& [w, c] : m) r.emplace(offset + w.value, RationalFn(c));
  return r;
}

json combination_to_json(const ElementTable& t, const Echelon::Row& comb) {
  json out = json::array();
  for (const auto& [k, c] : comb)
    out.push_back({{"x", word(t, ElementId{static_cast<std::uint32_t>(k)})}, {"c", to_string(c)}});
  return out;
}

}  // namespace

RationalFn CompletionElement::coeff(ElementId x) const {
  auto it = coeffs.find(x);
  return it == coeffs.end() ? RationalFn() : it->second;
}

void CompletionElement::add(ElementId x, const RationalFn& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = coeffs.emplace(x, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coeffs.erase(it);
  }
}

CompletionElement operator+(const CompletionElement& a, const CompletionElement& b) {
  CompletionElement out;
  out.truncated = a.truncated || b.truncated;
  if (a.truncated && b.truncated)
    out.exact_length = std::min(a.exact_length, b.exact_length);
  else
    out.exact_length = a.truncated ? a.exact_length : (b.truncated ? b.exact_length : std::max(a.exact_length, b.exact_length));
  out.coeffs = a.coeffs;
  for (const auto& [x, c] : b.coeffs) out.add(x, c);
  return out;
}

CompletionElement operator*(const RationalFn& c, const CompletionElement& a) {
  CompletionElement out;
  out.truncated = a.truncated;
  out.exact_length = a.exact_length;
  if (c.is_zero()) return out;
  for (const auto& [x, v] : a.coeffs) out.coeffs.emplace(x, c * v);
  return out;
}

bool agree_on_common_window(const ElementTable& t, const CompletionElement& a, const CompletionElement& b,
                            std::size_t up_to) {
  std::size_t limit = up_to;
  if (a.truncated) limit = std::min(limit, a.exact_length);
  if (b.truncated) limit = std::min(limit, b.exact_length);
  std::set<ElementId> keys;
  for (const auto& [x, c] : a.coeffs) keys.insert(x);
  for (const auto& [x, c] : b.coeffs) keys.insert(x);
  for (auto x : keys)
    if (t.length(x) <= limit && a.coeff(x) != b.coeff(x)) return false;
  return true;
}

IdealModule::IdealModule(std::shared_ptr<const invmod::InvolutionModule> M) : M_(std::move(M)) {
  const auto& t = table();
  x_empty_.truncated = !t.complete();
  x_empty_.exact_length = t.max_length();
  for (auto x : t.ids())
    if (t.star(x) == x) x_empty_.add(x, u_pow(-static_cast<int>(t.length(x))));

  X_.resize(t.size());
  for (auto w : M_->involutions()) {
    if (w == t.identity()) {
      X_[w.value] = x_empty_;
      continue;
    }
    int s = 0;
    while (!t.is_left_descent(s, w)) ++s;
    try {
      X_[w.value] = X_via(w, s);
    } catch (const std::out_of_range&) {
      // the truncated window has run out of exact coefficients
    }
  }
}

CompletionElement IdealModule::ts_mult(int s, const CompletionElement& e) const {
  const auto& t = table();
  CompletionElement out;
  out.truncated = e.truncated;
  if (e.truncated) {
    if (e.exact_length == 0) throw std::out_of_range("no exactly known coefficients left");
    out.exact_length = e.exact_length - 1;
  } else {
    out.exact_length = e.exact_length;
  }
  const RationalFn u2 = u_pow(2);
  for (const auto& [y, c] : e.coeffs) {
    const std::uint32_t sy = t.left(s, y);
    if (!t.is_left_descent(s, y)) {
      if (sy == kOutside) {
        if (!e.truncated) throw std::logic_error("finite element left the table");
        continue;
      }
      out.add(ElementId{sy}, c);
    } else {
      out.add(y, (u2 - 1) * c);
      out.add(ElementId{sy}, u2 * c);
    }
  }
  trim(out, t);
  return out;
}

CompletionElement IdealModule::t_mult(ElementId x, const CompletionElement& e) const {
  CompletionElement out = e;
  const auto& w = table().element(x).word();
  for (auto it = w.rbegin(); it != w.rend(); ++it) out = ts_mult(*it, out);
  return out;
}

const CompletionElement& IdealModule::X(ElementId w) const {
  if (!M_->in_I(w)) throw std::invalid_argument("element is not a twisted involution");
  const auto& x = X_[w.value];
  if (!x) throw std::out_of_range("X_w has no exactly known coefficients in this window");
  return *x;
}

CompletionElement IdealModule::X_via(ElementId w, int s) const {
  const auto& t = table();
  if (!t.is_left_descent(s, w)) throw std::invalid_argument("recursion needs a left descent");
  const int ss = t.system().star_of(s);
  const ElementId sw = t.left_in(s, w);
  if (sw == t.right_in(w, ss)) {
    // X_w = (u+1)^-1 (T_s - u) X_{sw}
    const auto& prev = X(sw);
    CompletionElement r = ts_mult(s, prev) + (-u_pow(1)) * prev;
    trim(r, t);
    const RationalFn inv(BigLaurent(1), BigLaurent::convert(LaurentPoly::u_power(1) + 1));
    return inv * r;
  }
  return ts_mult(s, X(t.right_in(sw, ss)));
}

IdealBasis ideal_basis(const IdealModule& I) {
  if (!I.finite()) throw std::invalid_argument("the ideal basis needs a finite Coxeter group");
  IdealBasis out;
  Echelon ech;
  for (auto x : I.table().ids())
    if (!ech.add(as_row(I.t_mult(x, I.x_empty())), x.value)) out.generators.push_back(x);
  out.dimension = ech.rank();
  return out;
}

EtaResult eta_check(const IdealModule& I) {
  if (!I.finite()) throw std::invalid_argument("eta check needs a finite Coxeter group");
  const auto& t = I.table();
  const auto& M = I.module();
  EtaResult res;
  res.report = Report("eta", t.system().label());
  const std::size_t n = t.size();
  const invmod::ModuleElement a_empty{{t.identity(), LaurentPoly(1)}};

  Echelon ex, ea, joint;
  json witness;
  for (auto x : t.ids()) {
    const auto hx = I.t_mult(x, I.x_empty());
    const auto ha = M.t_action(x, a_empty);
    auto kx = ex.add(as_row(hx), x.value);
    auto ka = ea.add(as_row(ha, 0), x.value);
    Echelon::Row both = as_row(hx);
    for (auto& [k, c] : as_row(ha, n)) both.emplace(k, c);
    joint.add(both, x.value);
    // A dependency among the T_x X_empty must also hold among the T_x a_empty, and conversely.
    auto check_kernel = [&](const Echelon::Row& comb, bool kills_x) {
      CompletionElement sx;
      std::map<ElementId, RationalFn> sa;
      for (const auto& [k, c] : comb) {
        const ElementId y{static_cast<std::uint32_t>(k)};
        sx = sx + c * I.t_mult(y, I.x_empty());
        for (const auto& [w, cw] : M.t_action(y, a_empty)) sa[w] += c * RationalFn(cw);
      }
      bool a_zero = true;
      for (const auto& [w, c] : sa) a_zero = a_zero && c.is_zero();
      const bool x_zero = sx.coeffs.empty();
      if (x_zero != a_zero && witness.is_null())
        witness = {{"h", combination_to_json(t, comb)},
                   {"kills", kills_x ? "X_empty" : "a_empty"},
                   {"does_not_kill", kills_x ? "a_empty" : "X_empty"}};
      return x_zero == a_zero;
    };
    if (kx) check_kernel(*kx, true);
    if (ka) check_kernel(*ka, false);
  }
  res.rank_ideal = ex.rank();
  res.rank_module = ea.rank();
  res.rank_joint = joint.rank();
  const std::size_t nI = M.involutions().size();

  auto& kernels = res.report.add("kernels", "h X_empty = 0 iff h a_empty = 0");
  Report::record(kernels, res.rank_ideal == res.rank_joint && res.rank_module == res.rank_joint && witness.is_null(),
                 witness.is_null() ? json{{"rank_ideal", res.rank_ideal}, {"rank_module", res.rank_module},
                                          {"rank_joint", res.rank_joint}}
                                   : witness);
  auto& onto = res.report.add("onto", "h -> h a_empty is onto M");
  Report::record(onto, res.rank_module == nI, json{{"rank_module", res.rank_module}, {"involutions", nI}});
  auto& dim = res.report.add("dimension", "dim of the ideal generated by X_empty equals |I_*|");
  Report::record(dim, res.rank_ideal == nI, json{{"rank_ideal", res.rank_ideal}, {"involutions", nI}});
  res.report.append(intertwining_check(I));
  res.holds = res.report.all_pass();
  res.witness = witness;
  return res;
}

Report intertwining_check(const IdealModule& I) {
  const auto& t = I.table();
  const auto& M = I.module();
  Report rep("eta-intertwining", t.system().label());
  auto& inter = rep.add("intertwining", "T_s X_w follows the generator rule of M");
  auto& indep = rep.add("X-descent-independence", "X_w independent of the chosen left descent");
  auto& integral = rep.add("X-integral", "coefficients of X_w lie in Z[u, u^-1]");
  for (auto w : M.involutions()) {
    const CompletionElement* Xw = nullptr;
    try {
      Xw = &I.X(w);
    } catch (const std::out_of_range&) {
      continue;
    }
    bool lau = true;
    for (const auto& [x, c] : Xw->coeffs) lau = lau && c.to_laurent().has_value();
    Report::record(integral, lau, json{{"w", word(t, w)}});
    for (int s = 0; s < t.system().rank(); ++s) {
      if (t.is_left_descent(s, w)) {
        try {
          const auto other = I.X_via(w, s);
          Report::record(indep, agree_on_common_window(t, *Xw, other, t.max_length()),
                         json{{"w", word(t, w)}, {"s", s + 1}});
        } catch (const std::out_of_range&) {
        }
      }
      try {
        const CompletionElement lhs = I.ts_mult(s, *Xw);
        const auto rule = M.ts_action(s, invmod::ModuleElement{{w, LaurentPoly(1)}});
        CompletionElement rhs;
        rhs.truncated = lhs.truncated;
        rhs.exact_length = lhs.exact_length;
        bool have_all = true;
        for (const auto& [w2, c] : rule) {
          try {
            rhs = rhs + RationalFn(c) * I.X(w2);
          } catch (const std::out_of_range&) {
            have_all = false;
          }
        }
        if (!have_all) continue;
        Report::record(inter, agree_on_common_window(t, lhs, rhs, t.max_length()),
                       json{{"w", word(t, w)}, {"s", s + 1}});
      } catch (const std::out_of_range&) {
      }
    }
  }
  return rep;
}

PiMap::PiMap(std::shared_ptr<const ElementTable> t) : t_(std::move(t)) {
  const auto& tab = *t_;
  report_ = Report("pi", tab.system().label());
  image_.assign(tab.size(), kOutside);
  image_[tab.identity().value] = tab.identity().value;
  auto& wd = report_.add("well-defined", "pi(s x') independent of the left descent s");
  for (auto x : tab.ids()) {
    if (x == tab.identity()) continue;
    std::uint32_t first = kOutside;
    bool seen = false;
    for (int s = 0; s < tab.system().rank(); ++s) {
      if (!tab.is_left_descent(s, x)) continue;
      const ElementId prev = tab.left_in(s, x);
      if (tab.length(prev) >= tab.length(x)) throw std::logic_error("pi rule needs l(x') < l(x)");
      if (image_[prev.value] == kOutside) continue;
      const std::uint32_t v = step(s, ElementId{image_[prev.value]});
      if (!seen) {
        first = v;
        seen = true;
      } else if (v != kOutside && first != kOutside) {
        Report::record(wd, v == first,
                       json{{"x", word(tab, x)}, {"s", s + 1}, {"pi", word(tab, ElementId{v})},
                            {"pi_first", word(tab, ElementId{first})}});
      }
    }
    image_[x.value] = first;
  }
}

ElementId PiMap::operator()(ElementId x) const {
  if (!known(x)) throw std::out_of_range("pi(x) leaves the window");
  return ElementId{image_[x.value]};
}

std::uint32_t PiMap::step(int s, ElementId p) const {
  const auto& t = *t_;
  const int ss = t.system().star_of(s);
  if (t.is_right_descent(p, ss)) return p.value;  // p s* < p
  const std::uint32_t sp = t.left(s, p);
  const std::uint32_t ps = t.right(p, ss);
  if (sp == kOutside || ps == kOutside) return kOutside;
  if (sp == ps) return sp;
  return t.right(ElementId{sp}, ss);
}

std::vector<ElementId> PiMap::fiber(ElementId w) const {
  std::vector<ElementId> out;
  for (auto x : t_->ids())
    if (image_[x.value] == w.value) out.push_back(x);
  return out;
}

json PiMap::to_json() const {
  const auto& t = *t_;
  json m = json::object();
  for (auto x : t.ids())
    if (known(x)) m[word(t, x)] = word(t, (*this)(x));
  return m;
}

Report specialization_check(const IdealModule& I, const PiMap& pi) {
  const auto& t = I.table();
  const auto& M = I.module();
  const auto& sys = t.system();
  Report rep("specialization", sys.label());
  auto& zinv = rep.add("integral-in-u^-1", "X_w is a combination of T_x over Z[u^-1]");
  auto& spec = rep.add("specialization", "(X_w) at u^-1 = 0 is the sum of T_x over the fiber of pi at w");
  auto& len = rep.add("length-identity", "l(w) = l(x) + l(x^-1 w) for pi(x) = w");
  auto& onto = rep.add("pi-onto", "every w in I_* has a nonempty fiber");
  for (auto w : M.involutions()) {
    const CompletionElement* Xw = nullptr;
    try {
      Xw = &I.X(w);
    } catch (const std::out_of_range&) {
      continue;
    }
    bool integral = true;
    json bad;
    std::map<ElementId, std::int64_t> special;
    for (const auto& [x, c] : Xw->coeffs) {
      const auto p = c.to_laurent();
      if (!p || !p->even_support() || p->max_degree() > 0) {
        integral = false;
        if (bad.is_null()) bad = {{"w", word(t, w)}, {"x", word(t, x)}, {"c", to_string(c)}};
        continue;
      }
      const auto c0 = p->coeff(0);
      if (c0 != 0) special[x] = c0;
    }
    Report::record(zinv, integral, bad.is_null() ? json{{"w", word(t, w)}} : bad);
    if (!integral) continue;
    bool ok = true;
    json wit;
    for (auto x : t.ids()) {
      if (Xw->truncated && t.length(x) > Xw->exact_length) break;
      if (!pi.known(x) && !Xw->truncated) {
        ok = false;
        continue;
      }
      const std::int64_t expect = pi.known(x) && pi(x) == w ? 1 : 0;
      const std::int64_t got = special.count(x) ? special.at(x) : 0;
      if (got != expect) {
        ok = false;
        if (wit.is_null()) wit = {{"w", word(t, w)}, {"x", word(t, x)}, {"coefficient", got}, {"expected", expect}};
      }
    }
    Report::record(spec, ok, wit.is_null() ? json{{"w", word(t, w)}} : wit);
  }
  for (auto x : t.ids()) {
    if (!pi.known(x)) continue;
    const ElementId w = pi(x);
    const auto& xe = t.element(x);
    const auto rest = sys.multiply(sys.inverse(xe), t.element(w));
    Report::record(len, t.length(w) == xe.length() + rest.length(),
                   json{{"x", word(t, x)}, {"w", word(t, w)}, {"x^-1w", rest.to_string()}});
  }
  if (I.finite()) {
    for (auto w : M.involutions()) Report::record(onto, !pi.fiber(w).empty(), json{{"w", word(t, w)}});
  }
  return rep;
}

int common_u_minus_one_power(const CompletionElement& e) {
  int k = -1;
  for (const auto& [x, c] : e.coeffs) {
    const auto p = c.to_laurent();
    if (!p) return 0;
    const int kx = split_u_minus_one(*p).first;
    k = k < 0 ? kx : std::min(k, kx);
  }
  return k < 0 ? 0 : k;
}

json completion_to_json(const ElementTable& t, const CompletionElement& e) {
  json terms = json::array();
  const int k = common_u_minus_one_power(e);
  LaurentPoly factor(1);
  for (int i = 0; i < k; ++i) factor = factor * (LaurentPoly::u_power(1) - 1);
  for (const auto& [x, c] : e.coeffs) {
    json term{{"x", word(t, x)}};
    if (const auto p = c.to_laurent()) {
      term["c"] = to_display(*p);
      if (k > 0) term["c_over_factor"] = to_display(*p->try_divide(factor));
    } else {
      term["c"] = to_string(c);
    }
    terms.push_back(term);
  }
  json out{{"terms", terms}, {"u_minus_one_power", k}, {"truncated", e.truncated}};
  if (e.truncated) out["exact_up_to_length"] = e.exact_length;
  return out;
}

}  // namespace hinv::idealmod

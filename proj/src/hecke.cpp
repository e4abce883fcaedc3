#include "hinv/hecke.hpp"

#include <mutex>

namespace hinv::hecke {

namespace {

const LaurentPoly& u_poly() {
  static const LaurentPoly u = LaurentPoly::u_power(1);
  return u;
}

}  // namespace

HeckeElement& HeckeElement::operator+=(const HeckeElement& o) {
  for (const auto& [x, c] : o.coeffs) add(x, c);
  return *this;
}

HeckeElement operator-(HeckeElement a, const HeckeElement& b) {
  for (const auto& [x, c] : b.coeffs) a.add(x, -c);
  return a;
}

HeckeElement operator*(const LaurentPoly& c, const HeckeElement& h) {
  HeckeElement out{h.basis, {}};
  if (c.is_zero()) return out;
  for (const auto& [x, a] : h.coeffs) out.add(x, c * a);
  return out;
}

// ---------------------------------------------------------------------------
// KLTable

KLTable::KLTable(std::size_t n, std::vector<LaurentPoly> data) : n_(n), data_(std::move(data)) {
  if (data_.size() != n_ * n_) throw std::invalid_argument("KL table data has wrong size");
}

std::int64_t KLTable::mu(ElementId y, ElementId w, const ElementTable& table) const {
  const auto lw = table.length(w);
  const auto ly = table.length(y);
  if (ly >= lw || (lw - ly) % 2 == 0) return 0;
  return P(y, w).coeff(static_cast<int>(lw - ly - 1));
}

KLTable KLTable::compute(const ElementTable& table) {
  const std::size_t n = table.size();
  std::vector<LaurentPoly> data(n * n);
  auto at = [&](std::uint32_t y, std::uint32_t w) -> LaurentPoly& { return data[w * n + y]; };
  data[0] = LaurentPoly(1);
  std::vector<std::uint32_t> mu_support;
  std::vector<std::int64_t> mu_values;
  for (std::uint32_t w = 1; w < n; ++w) {
    const ElementId wid{w};
    const int lw = static_cast<int>(table.length(wid));
    const int s = table.element(wid).word().front();
    const std::uint32_t v = table.left_in(s, wid).value;
    // z < v with s z < z and mu(z, v) != 0.
    mu_support.clear();
    mu_values.clear();
    for (std::uint32_t z = 0; z < v; ++z) {
      const ElementId zid{z};
      if (!table.is_left_descent(s, zid) || !table.bruhat_leq(zid, ElementId{v})) continue;
      const int d = static_cast<int>(table.length(ElementId{v}) - table.length(zid));
      if (d % 2 == 0) continue;
      const auto m = at(z, v).coeff(d - 1);
      if (m == 0) continue;
      mu_support.push_back(z);
      mu_values.push_back(m);
    }
    for (std::uint32_t x = 0; x <= w; ++x) {
      const ElementId xid{x};
      if (!table.bruhat_leq(xid, wid)) continue;
      const bool c = table.is_left_descent(s, xid);
      const std::uint32_t sx = table.left(s, xid);
      LaurentPoly p;
      if (sx != coxeter::kOutside) p += at(sx, v).shifted(c ? 0 : 2);
      p += at(x, v).shifted(c ? 2 : 0);
      for (std::size_t k = 0; k < mu_support.size(); ++k) {
        const std::uint32_t z = mu_support[k];
        const auto& pxz = at(x, z);
        if (pxz.is_zero()) continue;
        const int shift = lw - static_cast<int>(table.length(ElementId{z}));
        p -= LaurentPoly(mu_values[k]) * pxz.shifted(shift);
      }
      at(x, w) = std::move(p);
    }
  }
  return KLTable(n, std::move(data));
}

// ---------------------------------------------------------------------------
// HeckeAlgebra

HeckeAlgebra::HeckeAlgebra(std::shared_ptr<const ElementTable> table, std::shared_ptr<const KLTable> kl)
    : table_(std::move(table)), kl_(std::move(kl)) {
  if (!kl_) kl_ = std::make_shared<const KLTable>(KLTable::compute(*table_));
  if (kl_->size() != table_->size()) throw std::invalid_argument("KL table does not match the element table");
  const std::size_t n = table_->size();
  const LaurentPoly uinv = LaurentPoly::u_power(-1);
  bar_t_.resize(n);
  bar_t_[0] = HeckeElement::basis_element(table_->identity());
  for (std::uint32_t x = 1; x < n; ++x) {
    const ElementId xid{x};
    const int s = table_->element(xid).word().front();
    const auto& rest = bar_t_[table_->left_in(s, xid).value];
    // bar(T_s) = u^-1 T_s + (u^-1 - 1)
    bar_t_[x] = uinv * t_mult_s(s, rest) + (uinv - 1) * rest;
  }
  c_.resize(n);
  for (std::uint32_t w = 0; w < n; ++w) {
    const ElementId wid{w};
    const int lw = static_cast<int>(table_->length(wid));
    HeckeElement c;
    for (std::uint32_t y = 0; y <= w; ++y) {
      const auto& p = kl_->P(ElementId{y}, wid);
      if (!p.is_zero()) c.add(ElementId{y}, p.shifted(-lw));
    }
    c_[w] = std::move(c);
  }
}

HeckeElement HeckeAlgebra::t_mult_s(int s, const HeckeElement& h) const {
  HeckeElement out;
  const LaurentPoly& u = u_poly();
  for (const auto& [z, c] : h.coeffs) {
    const std::uint32_t sz = table_->left(s, z);
    if (sz == coxeter::kOutside) throw std::out_of_range("T_s T_z leaves the enumerated window");
    if (table_->is_left_descent(s, z)) {
      out.add(z, (u - 1) * c);
      out.add(ElementId{sz}, u * c);
    } else {
      out.add(ElementId{sz}, c);
    }
  }
  return out;
}

HeckeElement HeckeAlgebra::t_mult_right_s(const HeckeElement& h, int s) const {
  HeckeElement out;
  const LaurentPoly& u = u_poly();
  for (const auto& [z, c] : h.coeffs) {
    const std::uint32_t zs = table_->right(z, s);
    if (zs == coxeter::kOutside) throw std::out_of_range("T_z T_s leaves the enumerated window");
    if (table_->is_right_descent(z, s)) {
      out.add(z, (u - 1) * c);
      out.add(ElementId{zs}, u * c);
    } else {
      out.add(ElementId{zs}, c);
    }
  }
  return out;
}

HeckeElement HeckeAlgebra::t_mult(ElementId x, const HeckeElement& h) const {
  HeckeElement out = h;
  const auto& word = table_->element(x).word();
  for (auto it = word.rbegin(); it != word.rend(); ++it) out = t_mult_s(*it, out);
  return out;
}

HeckeElement HeckeAlgebra::multiply(const HeckeElement& a, const HeckeElement& b) const {
  HeckeElement out;
  for (const auto& [z, c] : a.coeffs) out += c * t_mult(z, b);
  return out;
}

HeckeElement HeckeAlgebra::bar_h(const HeckeElement& h) const {
  HeckeElement out;
  for (const auto& [x, c] : h.coeffs) out += c.bar() * bar_t_[x.value];
  return out;
}

HeckeElement HeckeAlgebra::c_elt(ElementId w) const { return c_[w.value]; }

HeckeElement HeckeAlgebra::to_c_basis(const HeckeElement& h) const {
  HeckeElement rest = h;
  HeckeElement out{Basis::C, {}};
  while (!rest.is_zero()) {
    // Largest id has maximal length in the support; c_z has T_z-coefficient v^{-l(z)}.
    const auto [z, a] = *rest.coeffs.rbegin();
    const LaurentPoly coord = a.shifted(static_cast<int>(table_->length(z)));
    out.add(z, coord);
    rest = rest - coord * c_[z.value];
  }
  return out;
}

HeckeElement HeckeAlgebra::to_t_basis(const HeckeElement& h) const {
  HeckeElement out;
  for (const auto& [z, c] : h.coeffs) out += c * c_[z.value];
  return out;
}

const StructureRow& HeckeAlgebra::h_struct(ElementId x, ElementId y) const {
  const std::uint64_t key = static_cast<std::uint64_t>(x.value) * table_->size() + y.value;
  {
    std::shared_lock lock(memo_mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return *it->second;
  }
  auto row = std::make_unique<StructureRow>(to_c_basis(multiply(c_[x.value], c_[y.value])).coeffs);
  std::unique_lock lock(memo_mutex_);
  auto [it, inserted] = memo_.emplace(key, std::move(row));
  return *it->second;
}

LaurentPoly HeckeAlgebra::h_dot(ElementId x, ElementId y, ElementId z) const {
  const auto& row = h_struct(x, y);
  auto it = row.find(z);
  return it == row.end() ? LaurentPoly() : it->second;
}

LaurentPoly HeckeAlgebra::triple_H(ElementId x, ElementId w, ElementId w2) const {
  const ElementId x2 = table_->star(table_->inverse(x));
  LaurentPoly out;
  for (const auto& [y, c] : h_struct(x, w)) {
    const auto d = h_dot(y, x2, w2);
    if (!d.is_zero()) out += c * d;
  }
  return out;
}

LaurentPoly HeckeAlgebra::triple_H_direct(ElementId x, ElementId w, ElementId w2) const {
  const ElementId x2 = table_->star(table_->inverse(x));
  const auto prod = multiply(multiply(c_[x.value], c_[w.value]), c_[x2.value]);
  return to_c_basis(prod).coeff(w2);
}

nlohmann::json kl_to_json(const HeckeAlgebra& H) {
  const auto& t = H.table();
  nlohmann::json rows = nlohmann::json::array();
  for (auto w : t.ids())
    for (auto y : t.ids()) {
      if (y > w) break;
      const auto& p = H.kl_poly(y, w);
      if (p.is_zero()) continue;
      rows.push_back({{"y", t.element(y).to_string()},
                      {"w", t.element(w).to_string()},
                      {"P", to_string(p, PolyStyle::U)},
                      {"P_coeffs", to_json(p)}});
    }
  return rows;
}

}  // namespace hinv::hecke

// The Hecke algebra over Z[v, v^-1] with (T_s + 1)(T_s - u) = 0, u = v^2:
// T-basis arithmetic, the bar involution, Kazhdan-Lusztig polynomials, the
// c-basis and its structure constants.
//
// Everything is in the variable-v convention. Quantities for the algebra with
// parameter u^2 are the images under subst_v_to_u.

#pragma once

#include <map>
#include <memory>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "hinv/coxeter.hpp"
#include "hinv/laurent.hpp"

namespace hinv::hecke {

using coxeter::ElementId;
using coxeter::ElementTable;

enum class Basis { T, C };

/// Finite combination of basis elements indexed by a table's ids.
struct HeckeElement {
  Basis basis = Basis::T;
  std::map<ElementId, LaurentPoly> coeffs;  // no zero entries

  static HeckeElement basis_element(ElementId x, Basis b = Basis::T, LaurentPoly c = 1) {
    HeckeElement h{b, {}};
    h.add(x, c);
    return h;
  }

  void add(ElementId x, const LaurentPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = coeffs.emplace(x, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) coeffs.erase(it);
    }
  }
  [[nodiscard]] LaurentPoly coeff(ElementId x) const {
    auto it = coeffs.find(x);
    return it == coeffs.end() ? LaurentPoly() : it->second;
  }
  [[nodiscard]] bool is_zero() const { return coeffs.empty(); }

  HeckeElement& operator+=(const HeckeElement& o);
  friend HeckeElement operator+(HeckeElement a, const HeckeElement& b) { return a += b; }
  friend HeckeElement operator-(HeckeElement a, const HeckeElement& b);
  friend HeckeElement operator*(const LaurentPoly& c, const HeckeElement& h);
  friend bool operator==(const HeckeElement& a, const HeckeElement& b) {
    return a.basis == b.basis && a.coeffs == b.coeffs;
  }
};

/// Kazhdan-Lusztig polynomials P_{y,w} for all pairs of a table, stored in
/// v with even exponents (P = 1 + u is 1 + v^2).
class KLTable {
 public:
  /// By the standard recursion along the first letter of w's normal form.
  static KLTable compute(const ElementTable& table);
  /// From previously computed data (row-major n x n, entry [w * n + y]).
  KLTable(std::size_t n, std::vector<LaurentPoly> data);

  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] const LaurentPoly& P(ElementId y, ElementId w) const { return data_[w.value * n_ + y.value]; }
  /// Coefficient of u^{(l(w)-l(y)-1)/2} in P_{y,w}; 0 when the length difference is even.
  [[nodiscard]] std::int64_t mu(ElementId y, ElementId w, const ElementTable& table) const;
  [[nodiscard]] const std::vector<LaurentPoly>& raw() const { return data_; }

 private:
  std::size_t n_;
  std::vector<LaurentPoly> data_;
};

using StructureRow = std::map<ElementId, LaurentPoly>;

class HeckeAlgebra {
 public:
  explicit HeckeAlgebra(std::shared_ptr<const ElementTable> table, std::shared_ptr<const KLTable> kl = nullptr);

  [[nodiscard]] const ElementTable& table() const { return *table_; }
  [[nodiscard]] std::shared_ptr<const ElementTable> table_ptr() const { return table_; }
  [[nodiscard]] const KLTable& kl() const { return *kl_; }
  [[nodiscard]] std::shared_ptr<const KLTable> kl_ptr() const { return kl_; }

  /// T_s h (T-basis).
  [[nodiscard]] HeckeElement t_mult_s(int s, const HeckeElement& h) const;
  /// h T_s (T-basis).
  [[nodiscard]] HeckeElement t_mult_right_s(const HeckeElement& h, int s) const;
  /// T_x h, letter by letter along the normal form of x.
  [[nodiscard]] HeckeElement t_mult(ElementId x, const HeckeElement& h) const;
  /// Product of two T-basis elements.
  [[nodiscard]] HeckeElement multiply(const HeckeElement& a, const HeckeElement& b) const;

  /// bar(T_x) in the T-basis.
  [[nodiscard]] const HeckeElement& bar_t(ElementId x) const { return bar_t_[x.value]; }
  /// Semilinear bar involution on T-basis elements.
  [[nodiscard]] HeckeElement bar_h(const HeckeElement& h) const;

  [[nodiscard]] const LaurentPoly& kl_poly(ElementId y, ElementId w) const { return kl_->P(y, w); }
  [[nodiscard]] std::int64_t mu(ElementId y, ElementId w) const { return kl_->mu(y, w, *table_); }

  /// c_w = v^{-l(w)} sum_{y <= w} P_{y,w}(u) T_y, in T-coordinates.
  [[nodiscard]] HeckeElement c_elt(ElementId w) const;
  /// T-basis to c-basis coordinates.
  [[nodiscard]] HeckeElement to_c_basis(const HeckeElement& h) const;
  /// c-basis to T-basis coordinates.
  [[nodiscard]] HeckeElement to_t_basis(const HeckeElement& h) const;

  /// All z with hdot_{x,y,z} != 0: c_x c_y = sum_z hdot_{x,y,z} c_z. Memoized.
  [[nodiscard]] const StructureRow& h_struct(ElementId x, ElementId y) const;
  [[nodiscard]] LaurentPoly h_dot(ElementId x, ElementId y, ElementId z) const;

  /// Coefficient of c_{w'} in c_x c_w c_{x^{*-1}}, via sum_y hdot(x,w,y) hdot(y,x^{*-1},w').
  [[nodiscard]] LaurentPoly triple_H(ElementId x, ElementId w, ElementId w2) const;
  /// Same coefficient from the full triple product in the T-basis.
  [[nodiscard]] LaurentPoly triple_H_direct(ElementId x, ElementId w, ElementId w2) const;

 private:
  std::shared_ptr<const ElementTable> table_;
  std::shared_ptr<const KLTable> kl_;
  std::vector<HeckeElement> bar_t_;
  std::vector<HeckeElement> c_;

  mutable std::shared_mutex memo_mutex_;
  mutable std::unordered_map<std::uint64_t, std::unique_ptr<StructureRow>> memo_;
};

/// JSON rows {"y": word, "w": word, "P": poly} for every y <= w.
nlohmann::json kl_to_json(const HeckeAlgebra& H);

}  // namespace hinv::hecke

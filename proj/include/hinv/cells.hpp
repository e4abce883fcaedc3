// Left, right and two-sided cells, the a-function, gamma constants,
// distinguished involutions and the ring J. Finite W only.

#pragma once

#include <map>
#include <memory>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "hinv/hecke.hpp"

namespace hinv::cells {

using coxeter::ElementId;
using hecke::HeckeAlgebra;

struct CellPartition {
  // Cells are sorted lists of ids; cells are ordered by their least id.
  std::vector<std::vector<ElementId>> two_sided;
  std::vector<std::vector<ElementId>> left;
  std::vector<std::vector<ElementId>> right;
  std::vector<int> two_sided_of;  // per element
  std::vector<int> left_of;
  std::vector<int> right_of;
  /// order[c][c'] is true iff c precedes c' (z <=_LR w for z in c, w in c').
  std::vector<std::vector<bool>> order;
};

/// Sparse integer combination of the t_w.
using JElement = std::map<ElementId, std::int64_t>;

struct JBlock {
  std::vector<ElementId> basis;
  JElement unit;
  bool closed = false;      // products of basis elements stay in the span
  bool unit_ok = false;     // unit acts as identity on both sides
};

struct LeftCellBlock : JBlock {
  int left_cell = 0;
  ElementId distinguished;
  bool star_stable = false;  // lambda* = lambda
};

class CellData {
 public:
  /// Computes every c_x c_y product (on `jobs` threads) and derives the rest.
  explicit CellData(std::shared_ptr<const HeckeAlgebra> H, int jobs = 1);

  [[nodiscard]] const HeckeAlgebra& hecke() const { return *H_; }
  [[nodiscard]] const coxeter::ElementTable& table() const { return H_->table(); }

  [[nodiscard]] bool leq_L(ElementId z, ElementId w) const { return leq_L_[w.value].test(z.value); }
  [[nodiscard]] bool leq_R(ElementId z, ElementId w) const { return leq_R_[w.value].test(z.value); }
  [[nodiscard]] bool leq_LR(ElementId z, ElementId w) const { return leq_LR_[w.value].test(z.value); }
  [[nodiscard]] bool same_two_sided(ElementId a, ElementId b) const {
    return cells_.two_sided_of[a.value] == cells_.two_sided_of[b.value];
  }
  [[nodiscard]] const CellPartition& partition() const { return cells_; }

  [[nodiscard]] int a(ElementId z) const { return a_[z.value]; }
  /// gamma_{x,y,z}: coefficient of v^{a(z^-1)} in hdot_{x,y,z^-1}.
  [[nodiscard]] std::int64_t gamma(ElementId x, ElementId y, ElementId z) const;

  /// {z : a(z) = l(z) - 2 deg_u P_{e,z}}, in table order.
  [[nodiscard]] const std::vector<ElementId>& distinguished() const { return distinguished_; }
  [[nodiscard]] bool is_distinguished(ElementId z) const { return is_distinguished_[z.value]; }

  /// t_x t_y = sum_z gamma_{x,y,z^-1} t_z.
  [[nodiscard]] const JElement& j_basis_product(ElementId x, ElementId y) const {
    return j_products_[x.value * table().size() + y.value];
  }
  [[nodiscard]] JElement j_mult(const JElement& a, const JElement& b) const;
  [[nodiscard]] JElement j_unit() const;

  [[nodiscard]] std::vector<JBlock> two_sided_blocks() const;
  [[nodiscard]] std::vector<LeftCellBlock> left_cell_blocks() const;

  [[nodiscard]] nlohmann::json to_json() const;

 private:
  std::shared_ptr<const HeckeAlgebra> H_;
  std::vector<boost::dynamic_bitset<>> leq_L_, leq_R_, leq_LR_;  // [w] = down-set of w
  CellPartition cells_;
  std::vector<int> a_;
  std::vector<ElementId> distinguished_;
  std::vector<bool> is_distinguished_;
  std::vector<JElement> j_products_;

  [[nodiscard]] bool closed_and_unital(JBlock& block) const;
};

nlohmann::json j_to_json(const coxeter::ElementTable& t, const JElement& j);

}  // namespace hinv::cells

// The module M with basis (a_w) over twisted involutions w in I_*, acted on by
// the Hecke algebra with parameter u^2. Bar operator, the A-basis, the
// constants f and beta, and the J-module cm built from them.

#pragma once

#include <map>
#include <memory>
#include <vector>

#include "hinv/cells.hpp"
#include "hinv/hecke.hpp"
#include "hinv/rational.hpp"
#include "hinv/report.hpp"

namespace hinv::invmod {

using coxeter::ElementId;
using coxeter::ElementTable;

/// Coordinates over I_*, keyed by element id (so iteration follows
/// (length, normal form)).
template <class C>
using ModElem = std::map<ElementId, C>;
using ModuleElement = ModElem<LaurentPoly>;
using RationalModuleElement = ModElem<RationalFn>;

/// Integer combination of the tau_w.
using CmElement = std::map<ElementId, std::int64_t>;

template <class C>
void add_to(ModElem<C>& m, ElementId w, const C& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = m.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
  }
}

class InvolutionModule {
 public:
  /// Works on the table's window; products that leave it throw
  /// std::out_of_range. For an infinite group, bar and the A-basis are
  /// available for l(w) <= max_length() - 2.
  explicit InvolutionModule(std::shared_ptr<const hecke::HeckeAlgebra> H);

  [[nodiscard]] const ElementTable& table() const { return H_->table(); }
  [[nodiscard]] const hecke::HeckeAlgebra& hecke() const { return *H_; }
  [[nodiscard]] const std::vector<ElementId>& involutions() const { return involutions_; }
  [[nodiscard]] bool in_I(ElementId w) const { return in_I_[w.value]; }
  /// Largest length for which bar(a_w) and A_w are computed.
  [[nodiscard]] std::size_t bar_length_bound() const { return bar_bound_; }

  /// The four-case rule, extended linearly.
  [[nodiscard]] ModuleElement ts_action(int s, const ModuleElement& m) const { return ts_generic(s, m); }
  [[nodiscard]] RationalModuleElement ts_action(int s, const RationalModuleElement& m) const {
    return ts_generic(s, m);
  }
  /// T_x m along the normal form of x.
  [[nodiscard]] ModuleElement t_action(ElementId x, const ModuleElement& m) const;
  /// h m for h given by T-coordinates in the algebra with parameter u^2.
  [[nodiscard]] ModuleElement h_action(const hecke::HeckeElement& h, const ModuleElement& m) const;
  /// T-coordinates of c_x in the parameter-u^2 algebra (v -> u applied to those of the dotted c_x).
  [[nodiscard]] hecke::HeckeElement c_frak(ElementId x) const;
  [[nodiscard]] ModuleElement c_action(ElementId x, const ModuleElement& m) const;

  /// bar(a_w) in the a-basis.
  [[nodiscard]] const ModuleElement& bar_a(ElementId w) const;
  /// bar(a_w) by one recursion step along the left descent s (sw < w),
  /// using the stored values of shorter elements.
  [[nodiscard]] ModuleElement bar_a_via(ElementId w, int s) const;
  [[nodiscard]] ModuleElement bar_m(const ModuleElement& m) const;

  /// A_w in the a-basis.
  [[nodiscard]] const ModuleElement& A(ElementId w) const;
  /// P^sigma_{y,w} (in u, stored with even v-exponents); zero unless y <= w in I_*.
  [[nodiscard]] LaurentPoly P_sigma(ElementId y, ElementId w) const;
  /// a-basis to A-basis coordinates.
  [[nodiscard]] ModuleElement to_A_basis(const ModuleElement& m) const;

  /// f_{x,w,w'} for all w': c_x A_w = sum_{w'} f_{x,w,w'} A_{w'}.
  [[nodiscard]] ModuleElement f_constants(ElementId x, ElementId w) const;

 private:
  std::shared_ptr<const hecke::HeckeAlgebra> H_;
  std::vector<ElementId> involutions_;
  std::vector<bool> in_I_;
  std::size_t bar_bound_ = 0;
  std::vector<ModuleElement> bar_;  // indexed by element id; empty outside I_*
  std::vector<ModuleElement> A_;

  template <class C>
  ModElem<C> ts_generic(int s, const ModElem<C>& m) const;
  void require_bar(ElementId w) const;
};

/// beta constants and the J-module cm for a finite group.
class CmModule {
 public:
  CmModule(std::shared_ptr<const InvolutionModule> M, std::shared_ptr<const cells::CellData> cells);

  [[nodiscard]] const InvolutionModule& module() const { return *M_; }
  [[nodiscard]] const cells::CellData& cells() const { return *cells_; }

  [[nodiscard]] const ModuleElement& f(ElementId x, ElementId w) const { return f_[x.value][w.value]; }
  [[nodiscard]] std::int64_t beta(ElementId x, ElementId w, ElementId w2) const;
  /// t_x tau_w = sum_{w'} beta_{x,w,w'} tau_{w'}.
  [[nodiscard]] const CmElement& basis_action(ElementId x, ElementId w) const { return action_[x.value][w.value]; }
  [[nodiscard]] CmElement cm_action(const cells::JElement& j, const CmElement& t) const;

  [[nodiscard]] nlohmann::json to_json() const;

 private:
  std::shared_ptr<const InvolutionModule> M_;
  std::shared_ptr<const cells::CellData> cells_;
  std::vector<std::vector<ModuleElement>> f_;  // [x][w]
  std::vector<std::vector<CmElement>> action_;
};

struct Section1Options {
  /// 0: triples (x, y, w) for the associativity law are exhaustive;
  /// otherwise this many random triples.
  std::size_t random_triples = 0;
  std::uint64_t seed = 1;
};

/// Module axioms, bar and A-basis checks; valid on truncated windows.
Report verify_module(const InvolutionModule& M);

/// Leading-term law, support and sign constraints, associativity, unit, and
/// the block and left-cell restrictions. Finite W.
Report verify_section1(const CmModule& cm, const Section1Options& options = {});

nlohmann::json module_to_json(const ElementTable& t, const ModuleElement& m);
nlohmann::json a_basis_to_json(const InvolutionModule& M);

}  // namespace hinv::invmod

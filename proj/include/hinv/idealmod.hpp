// The completion of the Hecke algebra (parameter u^2) acting on formal sums of
// T_x, the element X_empty, the left ideal it generates, the comparison with
// the involution module, and the map pi from W onto the twisted involutions.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "hinv/invmod.hpp"
#include "hinv/rational.hpp"
#include "hinv/report.hpp"

namespace hinv::idealmod {

using coxeter::ElementId;
using coxeter::ElementTable;

/// A formal sum of T_x. When `truncated`, only the coefficients of T_x with
/// l(x) <= exact_length are known; entries beyond that are never stored.
struct CompletionElement {
  std::map<ElementId, RationalFn> coeffs;
  std::size_t exact_length = 0;
  bool truncated = false;

  [[nodiscard]] RationalFn coeff(ElementId x) const;
  void add(ElementId x, const RationalFn& c);
  friend bool operator==(const CompletionElement& a, const CompletionElement& b) {
    return a.coeffs == b.coeffs && a.exact_length == b.exact_length && a.truncated == b.truncated;
  }
};

CompletionElement operator+(const CompletionElement& a, const CompletionElement& b);
CompletionElement operator*(const RationalFn& c, const CompletionElement& a);

/// Equal coefficients on all x with l(x) <= up_to that both elements know exactly.
bool agree_on_common_window(const ElementTable& t, const CompletionElement& a, const CompletionElement& b,
                            std::size_t up_to);

class IdealModule {
 public:
  /// For an infinite group the table window N is the truncation bound of X_empty.
  explicit IdealModule(std::shared_ptr<const invmod::InvolutionModule> M);

  [[nodiscard]] const ElementTable& table() const { return M_->table(); }
  [[nodiscard]] const invmod::InvolutionModule& module() const { return *M_; }
  [[nodiscard]] bool finite() const { return table().complete(); }

  /// Sum over star-fixed x of u^-l(x) T_x.
  [[nodiscard]] const CompletionElement& x_empty() const { return x_empty_; }

  /// Left multiplication; a truncated element loses one length of exactness.
  [[nodiscard]] CompletionElement ts_mult(int s, const CompletionElement& e) const;
  [[nodiscard]] CompletionElement t_mult(ElementId x, const CompletionElement& e) const;

  /// X_w, the preimage of a_w, by the generator recursion along the least left
  /// descent. Available for every w in I_* of the window.
  [[nodiscard]] const CompletionElement& X(ElementId w) const;
  /// One recursion step along the left descent s of w.
  [[nodiscard]] CompletionElement X_via(ElementId w, int s) const;

 private:
  std::shared_ptr<const invmod::InvolutionModule> M_;
  CompletionElement x_empty_;
  std::vector<std::optional<CompletionElement>> X_;
};

struct IdealBasis {
  /// x such that the T_x X_empty are a basis of the ideal (greedy in element order).
  std::vector<ElementId> generators;
  std::size_t dimension = 0;
};

/// Finite W only.
IdealBasis ideal_basis(const IdealModule& I);

struct EtaResult {
  Report report{"eta", ""};
  bool holds = false;
  std::size_t rank_ideal = 0;   // rank of h -> h X_empty
  std::size_t rank_module = 0;  // rank of h -> h a_empty
  std::size_t rank_joint = 0;
  /// On failure: T-coordinates of an h killing exactly one of X_empty, a_empty.
  nlohmann::json witness;
};

/// Compares the kernels of h -> h X_empty and h -> h a_empty, checks that the
/// induced map is onto M, and that w -> X_w intertwines the generator action.
/// Finite W only.
EtaResult eta_check(const IdealModule& I);

/// T_s X_w equals the generator rule applied to the X_{w'}, on the exactly
/// known window; also descent independence of the X_w recursion. Valid on
/// truncated windows.
Report intertwining_check(const IdealModule& I);

/// pi: W -> I_* by the inductive rule, using the left descent s with x = s x'.
/// On a truncated window pi(x) is unknown (kOutside) when it leaves the window.
class PiMap {
 public:
  explicit PiMap(std::shared_ptr<const ElementTable> t);

  [[nodiscard]] bool known(ElementId x) const { return image_[x.value] != coxeter::kOutside; }
  /// Throws std::out_of_range when unknown.
  [[nodiscard]] ElementId operator()(ElementId x) const;
  [[nodiscard]] std::vector<ElementId> fiber(ElementId w) const;
  /// One step of the rule from pi(x') with x = s x'; kOutside if it leaves the window.
  [[nodiscard]] std::uint32_t step(int s, ElementId pi_prev) const;
  /// Every left descent of every x gives the same value.
  [[nodiscard]] const Report& well_definedness() const { return report_; }
  [[nodiscard]] nlohmann::json to_json() const;

 private:
  std::shared_ptr<const ElementTable> t_;
  std::vector<std::uint32_t> image_;
  Report report_{"pi", ""};
};

/// (X_w) at u^-1 = 0 equals the sum of T_x over the fiber of pi at w, on the
/// exactly known window; X_w integral in u^-1; the length identity on fibers;
/// pi onto I_* (finite W).
Report specialization_check(const IdealModule& I, const PiMap& pi);

/// Largest k with (u-1)^k dividing every coefficient, when all are Laurent.
int common_u_minus_one_power(const CompletionElement& e);

/// Terms in (length, normal form) order with u-style coefficients.
nlohmann::json completion_to_json(const ElementTable& t, const CompletionElement& e);

}  // namespace hinv::idealmod

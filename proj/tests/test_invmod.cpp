#include <set>

#include "doctest.h"
#include "hinv/invmod.hpp"

using namespace hinv;
using namespace hinv::invmod;
using coxeter::CoxeterSystem;

namespace {

std::shared_ptr<const InvolutionModule> module_of(const CoxeterSystem& sys, std::size_t max_len = 0) {
  auto t = max_len ? std::make_shared<const ElementTable>(sys, max_len) : std::make_shared<const ElementTable>(sys);
  return std::make_shared<InvolutionModule>(std::make_shared<hecke::HeckeAlgebra>(t));
}

std::shared_ptr<const InvolutionModule> module_of(const char* label) { return module_of(CoxeterSystem::from_label(label)); }

LaurentPoly u(int k) { return LaurentPoly::u_power(k); }
LaurentPoly v(int k) { return LaurentPoly::v_power(k); }

ModuleElement a(const ElementTable& t, const char* w) { return ModuleElement{{t.parse(w), LaurentPoly(1)}}; }

void require_pass(const Report& r) {
  for (const auto& c : r.checks()) {
    INFO(c.id << " witness " << c.witness.dump());
    CHECK(c.pass);
  }
}

}  // namespace

TEST_CASE("four-case action") {
  auto M1 = module_of("A1");
  const auto& t1 = M1->table();
  CHECK(M1->ts_action(0, a(t1, "")) == ModuleElement{{t1.parse(""), u(1)}, {t1.parse("1"), u(1) + 1}});
  CHECK(M1->ts_action(0, a(t1, "1")) ==
        ModuleElement{{t1.parse("1"), u(2) - u(1) - 1}, {t1.parse(""), u(2) - u(1)}});
  auto M2 = module_of("A2");
  const auto& t2 = M2->table();
  CHECK(M2->involutions().size() == 4);
  CHECK(M2->ts_action(0, a(t2, "121")) == ModuleElement{{t2.parse("121"), u(2) - 1}, {t2.parse("2"), u(2)}});
  // sw != ws* and sw > w: a_{sws*}
  CHECK(M2->ts_action(0, a(t2, "2")) == a(t2, "121"));
  CHECK(M2->ts_action(1, a(t2, "1")) == a(t2, "121"));
}

TEST_CASE("twisted involutions") {
  auto M = module_of(CoxeterSystem::from_label("A2", {1, 0}));
  const auto& t = M->table();
  std::set<std::string> names;
  for (auto w : M->involutions()) names.insert(t.element(w).to_string());
  // w* = w^-1 with 1 <-> 2
  CHECK(names == std::set<std::string>{"", "12", "21", "121"});
  // sw = 1 differs from ws* = 2, so T_1 a_empty = a_{s w s*}.
  CHECK(M->ts_action(0, a(t, "")) == a(t, "12"));
  for (auto w : M->involutions()) {
    const auto x = M->ts_action(0, ModuleElement{{w, LaurentPoly(1)}});
    for (const auto& [y, c] : x) CHECK(M->in_I(y));
  }
}

TEST_CASE("module axioms, bar and A-basis") {
  for (const char* label : {"A1", "A2", "A3", "B2", "G2", "B3", "H3"}) {
    INFO(label);
    require_pass(verify_module(*module_of(label)));
  }
  require_pass(verify_module(*module_of(CoxeterSystem::from_label("A2", {1, 0}))));
  require_pass(verify_module(*module_of(CoxeterSystem::from_label("A3", {2, 1, 0}))));
  require_pass(verify_module(*module_of(CoxeterSystem::from_label("B2", {1, 0}))));
  auto dinf = module_of(CoxeterSystem::from_label("Dinf"), 10);
  CHECK(dinf->bar_length_bound() == 9);
  const auto r = verify_module(*dinf);
  require_pass(r);
  CHECK(r.find("A-bar-invariant")->instances > 0);
}

TEST_CASE("A1 bar and A-basis by hand") {
  auto M = module_of("A1");
  const auto& t = M->table();
  const auto e = t.identity(), s = t.parse("1");
  CHECK(M->bar_a(s) == ModuleElement{{s, u(-1)}, {e, u(-1) - 1}});
  CHECK(M->A(s) == ModuleElement{{s, v(-1)}, {e, v(-1)}});
  CHECK(M->P_sigma(e, s) == LaurentPoly(1));
  // c_s = u^-1 (T_s + 1): c_s A_e = (v + v^-1) A_s, c_s A_s = (v^2 + v^-2) A_s.
  CHECK(M->f_constants(s, e) == ModuleElement{{s, v(1) + v(-1)}});
  CHECK(M->f_constants(s, s) == ModuleElement{{s, v(2) + v(-2)}});
  CHECK(M->f_constants(e, s) == ModuleElement{{s, LaurentPoly(1)}});
}

TEST_CASE("A-basis of A3") {
  auto M3 = module_of("A3");
  const auto& t3 = M3->table();
  CHECK(M3->involutions().size() == 10);
  for (auto w : M3->involutions()) {
    const auto& Aw = M3->A(w);
    CHECK(M3->to_A_basis(Aw) == ModuleElement{{w, LaurentPoly(1)}});
    for (const auto& [y, c] : Aw) CHECK(t3.bruhat_leq(y, w));
  }
}

CmModule cm_of(const CoxeterSystem& sys) {
  auto H = std::make_shared<const hecke::HeckeAlgebra>(std::make_shared<const ElementTable>(sys));
  return CmModule(std::make_shared<InvolutionModule>(H), std::make_shared<cells::CellData>(H, 2));
}

TEST_CASE("leading-term law and J-module axioms") {
  for (const char* label : {"A1", "A2", "A3", "B2", "G2"}) {
    INFO(label);
    require_pass(verify_section1(cm_of(CoxeterSystem::from_label(label))));
  }
  require_pass(verify_section1(cm_of(CoxeterSystem::from_label("A2", {1, 0}))));
  require_pass(verify_section1(cm_of(CoxeterSystem::from_label("A3", {2, 1, 0}))));
  Section1Options random;
  random.random_triples = 3000;
  random.seed = 5;
  require_pass(verify_section1(cm_of(CoxeterSystem::from_label("B3")), random));
}

TEST_CASE("cm of A1 and A2") {
  const auto cm = cm_of(CoxeterSystem::from_label("A1"));
  const auto& t = cm.module().table();
  const auto e = t.identity(), s = t.parse("1");
  CHECK(cm.basis_action(s, s) == CmElement{{s, 1}});
  CHECK(cm.basis_action(s, e).empty());
  CHECK(cm.basis_action(e, e) == CmElement{{e, 1}});
  const auto cm2 = cm_of(CoxeterSystem::from_label("A2"));
  const auto& t2 = cm2.module().table();
  // The unit of J fixes every tau_w.
  for (auto w : cm2.module().involutions())
    CHECK(cm2.cm_action(cm2.cells().j_unit(), CmElement{{w, 1}}) == CmElement{{w, 1}});
  std::int64_t total = 0;
  for (auto x : t2.ids())
    for (auto w : cm2.module().involutions())
      for (const auto& [w2, b] : cm2.basis_action(x, w)) total += b != 0 ? 1 : 0;
  CHECK(total > 0);
}

TEST_CASE("P^sigma is congruent to the ordinary KL polynomial mod 2 (Weyl groups, trivial star)") {
  for (const char* label : {"A2", "A3", "B2", "G2", "B3"}) {
    INFO(label);
    auto M = module_of(label);
    const auto& H = M->hecke();
    for (auto w : M->involutions())
      for (auto y : M->involutions()) {
        const auto d = M->P_sigma(y, w) - H.kl_poly(y, w);
        bool even = true;
        for (const auto& [e, c] : d.terms()) even = even && c % 2 == 0;
        CHECK(even);
      }
  }
}

TEST_CASE("A3 table of P^sigma") {
  // Frozen from the triangular solve; every other pair y <= w in I_* has P^sigma = 1.
  auto M = module_of("A3");
  const auto& t = M->table();
  const std::set<std::pair<std::string, std::string>> nontrivial{
      {"", "2132"}, {"2", "2132"}, {"", "12321"}, {"1", "12321"}, {"3", "12321"}, {"13", "12321"}};
  for (auto w : M->involutions())
    for (auto y : M->involutions()) {
      const auto P = M->P_sigma(y, w);
      const std::pair<std::string, std::string> key{t.element(y).to_string(), t.element(w).to_string()};
      if (!t.bruhat_leq(y, w))
        CHECK(P.is_zero());
      else if (nontrivial.count(key))
        CHECK(P == u(1) + 1);
      else
        CHECK(P == LaurentPoly(1));
    }
}

#include <set>

#include "doctest.h"
#include "hinv/idealmod.hpp"

using namespace hinv;
using namespace hinv::idealmod;
using coxeter::CoxeterSystem;

namespace {

std::shared_ptr<const IdealModule> ideal_of(const CoxeterSystem& sys, std::size_t max_len = 0) {
  auto t = max_len ? std::make_shared<const ElementTable>(sys, max_len) : std::make_shared<const ElementTable>(sys);
  auto M = std::make_shared<invmod::InvolutionModule>(std::make_shared<hecke::HeckeAlgebra>(t));
  return std::make_shared<IdealModule>(M);
}

std::shared_ptr<const IdealModule> ideal_of(const char* label) { return ideal_of(CoxeterSystem::from_label(label)); }

// Sum of c u^e over the listed (e, c).
LaurentPoly upoly(std::initializer_list<std::pair<int, int>> terms) {
  LaurentPoly p;
  for (auto [e, c] : terms) p = p + LaurentPoly::monomial(c, 2 * e);
  return p;
}

struct Term {
  const char* x;
  LaurentPoly c;
};

// (u-1)^k sum c T_x, as exact coefficients; every x inside the element's
// exact window and absent from `terms` must have coefficient 0.
void check_table(const IdealModule& I, const char* w, int k, const std::vector<Term>& terms) {
  INFO("X_" << w);
  const auto& t = I.table();
  const auto& X = I.X(t.parse(w));
  LaurentPoly factor(1);
  for (int i = 0; i < k; ++i) factor = factor * (LaurentPoly::u_power(1) - 1);
  std::map<ElementId, LaurentPoly> expect;
  for (const auto& term : terms) {
    const auto x = t.parse(term.x);
    REQUIRE(t.length(x) == std::string(term.x).size());  // the listed words are reduced
    expect[x] = factor * term.c;
    if (X.truncated) REQUIRE(t.length(x) <= X.exact_length);
  }
  for (auto x : t.ids()) {
    if (X.truncated && t.length(x) > X.exact_length) break;
    INFO("T_" << t.element(x).to_string());
    const auto want = expect.count(x) ? RationalFn(expect.at(x)) : RationalFn();
    CHECK(X.coeff(x) == want);
  }
}

std::set<std::string> fiber_words(const PiMap& pi, const ElementTable& t, const char* w) {
  std::set<std::string> out;
  for (auto x : pi.fiber(t.parse(w))) out.insert(t.element(x).to_string());
  return out;
}

std::set<std::string> normalized(const ElementTable& t, std::initializer_list<const char*> words) {
  std::set<std::string> out;
  for (auto w : words) out.insert(t.element(t.parse(w)).to_string());
  return out;
}

void require_pass(const Report& r) {
  for (const auto& c : r.checks()) {
    INFO(r.suite() << "/" << c.id << " witness " << c.witness.dump());
    CHECK(c.pass);
  }
}

// alternating word 1212... or 2121... of length n
std::string alt(char first, std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(i % 2 == 0 ? first : (first == '1' ? '2' : '1'));
  return s;
}

}  // namespace

TEST_CASE("X_empty") {
  auto A1 = ideal_of("A1");
  const auto& t1 = A1->table();
  CHECK(A1->x_empty().coeffs ==
        std::map<ElementId, RationalFn>{{t1.identity(), RationalFn(1)}, {t1.parse("1"), RationalFn(LaurentPoly::u_power(-1))}});
  auto A2 = ideal_of("A2");
  CHECK(A2->x_empty().coeffs.size() == 6);
  // u^-3 on T_121: the definition's sign convention, which reproduces X_1 below.
  CHECK(A2->x_empty().coeff(A2->table().parse("121")) == RationalFn(LaurentPoly::u_power(-3)));
  CHECK(ideal_of("A3")->x_empty().coeffs.size() == 24);
  // with the twist 1 <-> 2 only star-fixed x appear: e and 121
  auto tw = ideal_of(CoxeterSystem::from_label("A2", {1, 0}));
  CHECK(tw->x_empty().coeffs.size() == 2);
  auto dinf = ideal_of(CoxeterSystem::from_label("Dinf"), 8);
  CHECK(dinf->x_empty().truncated);
  CHECK(dinf->x_empty().coeffs.size() == 17);
}

TEST_CASE("left multiplication is associative with the quadratic relation") {
  auto I = ideal_of("A2");
  const auto& X = I->x_empty();
  for (int s = 0; s < 2; ++s) {
    // (T_s + 1)(T_s - u^2) X = 0
    const auto tx = I->ts_mult(s, X);
    const auto ttx = I->ts_mult(s, tx);
    const RationalFn u2(LaurentPoly::u_power(2));
    const auto r = ttx + (RationalFn(1) - u2) * tx + (-u2) * X;
    CHECK(r.coeffs.empty());
  }
  const auto a = I->ts_mult(0, I->ts_mult(1, I->ts_mult(0, X)));
  const auto b = I->ts_mult(1, I->ts_mult(0, I->ts_mult(1, X)));
  CHECK(a == b);
}

TEST_CASE("ideal dimensions") {
  auto A1 = ideal_of("A1");
  const auto b1 = ideal_basis(*A1);
  CHECK(b1.dimension == 2);
  CHECK(b1.generators == std::vector<ElementId>{A1->table().identity(), A1->table().parse("1")});
  CHECK(ideal_basis(*ideal_of("A2")).dimension == 4);
  CHECK(ideal_basis(*ideal_of("A3")).dimension == 10);
  CHECK(ideal_basis(*ideal_of("B2")).dimension == 6);
  CHECK(ideal_basis(*ideal_of("G2")).dimension == 8);
}

TEST_CASE("eta holds for A1, A2, A3, dihedral and twisted cases") {
  for (const char* label : {"A1", "A2", "A3", "B2", "G2", "I2(5)"}) {
    INFO(label);
    const auto r = eta_check(*ideal_of(label));
    CHECK(r.holds);
    CHECK(r.rank_ideal == r.rank_module);
    require_pass(r.report);
  }
  for (auto sys : {CoxeterSystem::from_label("A2", {1, 0}), CoxeterSystem::from_label("A3", {2, 1, 0}),
                   CoxeterSystem::from_label("B2", {1, 0}), CoxeterSystem::from_label("G2", {1, 0})}) {
    const auto r = eta_check(*ideal_of(sys));
    CHECK(r.holds);
    require_pass(r.report);
  }
}

TEST_CASE("A1 and A2 tables") {
  auto A1 = ideal_of("A1");
  check_table(*A1, "1", 1, {{"1", upoly({{-1, 1}})}});
  auto A2 = ideal_of("A2");
  check_table(*A2, "1", 1, {{"121", upoly({{-3, 1}})}, {"12", upoly({{-2, 1}})}, {"1", upoly({{-1, 1}})}});
  check_table(*A2, "2", 1, {{"121", upoly({{-3, 1}})}, {"21", upoly({{-2, 1}})}, {"2", upoly({{-1, 1}})}});
  check_table(*A2, "121", 1,
              {{"121", upoly({{-1, 1}, {-2, 1}, {-3, -1}})}, {"12", upoly({{-1, 1}})}, {"21", upoly({{-1, 1}})}});
  // X_121 = T_1 X_2 = T_2 X_1
  const auto& t = A2->table();
  CHECK(A2->ts_mult(0, A2->X(t.parse("2"))) == A2->X(t.parse("121")));
  CHECK(A2->ts_mult(1, A2->X(t.parse("1"))) == A2->X(t.parse("121")));
}

TEST_CASE("A3 table") {
  auto I = ideal_of("A3");
  auto m = [](int e) { return upoly({{e, 1}}); };
  check_table(*I, "1", 1,
              {{"1", m(-1)}, {"12", m(-2)}, {"13", m(-2)}, {"121", m(-3)}, {"123", m(-3)}, {"132", m(-3)},
               {"1213", m(-4)}, {"1232", m(-4)}, {"1321", m(-4)}, {"13213", m(-5)}, {"12132", m(-5)},
               {"121321", m(-6)}});
  check_table(*I, "3", 1,
              {{"3", m(-1)}, {"32", m(-2)}, {"13", m(-2)}, {"323", m(-3)}, {"321", m(-3)}, {"132", m(-3)},
               {"3231", m(-4)}, {"3212", m(-4)}, {"1323", m(-4)}, {"13213", m(-5)}, {"32312", m(-5)},
               {"121321", m(-6)}});
  check_table(*I, "2", 1,
              {{"2", m(-1)}, {"21", m(-2)}, {"23", m(-2)}, {"121", m(-3)}, {"323", m(-3)}, {"213", m(-3)},
               {"1213", m(-4)}, {"3231", m(-4)}, {"2132", m(-4)}, {"32312", m(-5)}, {"12132", m(-5)},
               {"121321", m(-6)}});
  check_table(*I, "13", 2,
              {{"13", m(-2)}, {"132", m(-3)}, {"1321", m(-4)}, {"1323", m(-4)}, {"13213", m(-5)}, {"121321", m(-6)}});
  const auto t3 = upoly({{-1, 1}, {-2, 1}, {-3, -1}});
  const auto t4 = upoly({{-2, 1}, {-3, 1}, {-4, -1}});
  const auto t5 = upoly({{-3, 1}, {-4, 1}, {-5, -1}});
  const auto t6 = upoly({{-4, 1}, {-5, 1}, {-6, -1}});
  check_table(*I, "121", 1,
              {{"12", m(-1)}, {"21", m(-1)}, {"121", t3}, {"123", m(-2)}, {"213", m(-2)}, {"1213", t4},
               {"1323", m(-3)}, {"2132", m(-3)}, {"12132", t5}, {"13213", m(-4)}, {"21321", m(-4)}, {"121321", t6}});
  check_table(*I, "323", 1,
              {{"32", m(-1)}, {"23", m(-1)}, {"323", t3}, {"321", m(-2)}, {"213", m(-2)}, {"3213", t4},
               {"1321", m(-3)}, {"2132", m(-3)}, {"32132", t5}, {"13213", m(-4)}, {"21323", m(-4)}, {"121321", t6}});
  check_table(*I, "2132", 2,
              {{"213", m(-2)}, {"2132", m(-3)}, {"21321", m(-4)}, {"21323", m(-4)}, {"12321", m(-4)}, {"121321", t6}});
  check_table(*I, "13213", 1,
              {{"132", m(-1)}, {"123", m(-1)}, {"321", m(-1)}, {"1321", t3}, {"3213", m(-2)}, {"1323", t3},
               {"1213", m(-2)}, {"2132", m(-2)}, {"21323", t4}, {"21321", t4},
               {"13213", upoly({{-2, 2}, {-3, 1}, {-4, -2}})},
               {"121321", upoly({{-2, 1}, {-3, 2}, {-4, -1}, {-5, -2}, {-6, 1}})}});
  check_table(*I, "213213", 2,
              {{"1213", m(-2)}, {"2132", m(-2)}, {"2321", m(-2)}, {"21323", t4}, {"21321", t4},
               {"13231", upoly({{-2, 1}, {-4, -1}})},
               {"121321", upoly({{-2, 1}, {-3, 1}, {-4, -1}, {-5, -1}, {-6, 1}})}});
}

TEST_CASE("infinite dihedral series") {
  const std::size_t N = 12;
  auto I = ideal_of(CoxeterSystem::from_label("Dinf"), N);
  const auto& t = I->table();
  // X_w for w alternating of length 2j+1 starting with `first`:
  // (u-1) sum_{k>=1} u^-k T_{alternating from first, length k+j}.
  for (char first : {'1', '2'})
    for (std::size_t j = 0; j < 4; ++j) {
      const std::string w = alt(first, 2 * j + 1);
      const auto& X = I->X(t.parse(w));
      REQUIRE(X.truncated);
      std::vector<Term> terms;
      for (std::size_t k = 1; k + j <= X.exact_length; ++k)
        terms.push_back({nullptr, upoly({{-static_cast<int>(k), 1}})});
      std::vector<std::string> words;
      for (std::size_t k = 1; k + j <= X.exact_length; ++k) words.push_back(alt(first, k + j));
      for (std::size_t i = 0; i < terms.size(); ++i) terms[i].x = words[i].c_str();
      CHECK(X.exact_length == N - j - 1);  // one length of exactness per recursion step
      check_table(*I, w.c_str(), 1, terms);
    }
  // stability: a larger window agrees on the common exact part
  auto J = ideal_of(CoxeterSystem::from_label("Dinf"), N + 2);
  for (auto w : I->module().involutions()) {
    const auto& a = I->X(w);
    const auto& b = J->X(J->table().parse(t.element(w).to_string()));
    CHECK(b.exact_length >= a.exact_length);
    for (auto x : t.ids()) {
      if (t.length(x) > a.exact_length) break;
      CHECK(a.coeff(x) == b.coeff(J->table().parse(t.element(x).to_string())));
    }
  }
  require_pass(intertwining_check(*I));
}

TEST_CASE("pi fibers") {
  auto A2 = std::make_shared<const ElementTable>(CoxeterSystem::from_label("A2"));
  PiMap pi2(A2);
  CHECK(fiber_words(pi2, *A2, "") == std::set<std::string>{""});
  CHECK(fiber_words(pi2, *A2, "1") == std::set<std::string>{"1"});
  CHECK(fiber_words(pi2, *A2, "121") == normalized(*A2, {"12", "21", "121"}));
  auto A3 = std::make_shared<const ElementTable>(CoxeterSystem::from_label("A3"));
  PiMap pi3(A3);
  CHECK(fiber_words(pi3, *A3, "13") == normalized(*A3, {"13"}));
  CHECK(fiber_words(pi3, *A3, "121") == normalized(*A3, {"12", "21", "121"}));
  CHECK(fiber_words(pi3, *A3, "323") == normalized(*A3, {"32", "23", "323"}));
  CHECK(fiber_words(pi3, *A3, "2132") == normalized(*A3, {"213"}));
  CHECK(fiber_words(pi3, *A3, "13213") == normalized(*A3, {"132", "123", "321", "1321", "1323"}));
  CHECK(fiber_words(pi3, *A3, "121321") ==
        normalized(*A3, {"1213", "2132", "2321", "21323", "21321", "13231", "121321"}));
  require_pass(pi3.well_definedness());
  auto D = std::make_shared<const ElementTable>(CoxeterSystem::from_label("Dinf"), 9);
  PiMap pid(D);
  CHECK(fiber_words(pid, *D, "121") == std::set<std::string>{"12"});
  CHECK(fiber_words(pid, *D, "212") == std::set<std::string>{"21"});
  CHECK(fiber_words(pid, *D, "12121") == std::set<std::string>{"121"});
  CHECK(fiber_words(pid, *D, "1212121") == std::set<std::string>{"1212"});
  CHECK(fiber_words(pid, *D, "2121212") == std::set<std::string>{"2121"});
  require_pass(pid.well_definedness());
  for (const char* label : {"B2", "G2", "B3", "H3", "A4"}) {
    INFO(label);
    PiMap p(std::make_shared<const ElementTable>(CoxeterSystem::from_label(label)));
    require_pass(p.well_definedness());
  }
}

TEST_CASE("specialization at u^-1 = 0") {
  for (const char* label : {"A1", "A2", "A3", "B2", "G2"}) {
    INFO(label);
    auto I = ideal_of(label);
    PiMap pi(I->module().hecke().table_ptr());
    require_pass(specialization_check(*I, pi));
  }
  for (auto sys : {CoxeterSystem::from_label("A2", {1, 0}), CoxeterSystem::from_label("A3", {2, 1, 0})}) {
    auto I = ideal_of(sys);
    PiMap pi(I->module().hecke().table_ptr());
    require_pass(specialization_check(*I, pi));
  }
  auto D = ideal_of(CoxeterSystem::from_label("Dinf"), 12);
  PiMap pid(D->module().hecke().table_ptr());
  const auto r = specialization_check(*D, pid);
  require_pass(r);
  CHECK(r.find("specialization")->instances > 4);
}

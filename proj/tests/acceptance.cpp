// Acceptance run: one PASS/FAIL line per criterion with its runtime and the
// pinned limit. All comparisons are exact; a criterion also fails when it
// exceeds its time limit. Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "hinv/cells.hpp"
#include "hinv/eqvb.hpp"
#include "hinv/idealmod.hpp"
#include "hinv/invmod.hpp"
#include "hinv/suites.hpp"

using namespace hinv;
using coxeter::CoxeterSystem;
using coxeter::ElementId;
using coxeter::ElementTable;

namespace {

// Collects failures; keeps the first few messages.
struct Tally {
  std::size_t checks = 0, failures = 0;
  std::string first;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ < 3) first += (first.empty() ? "" : "; ") + what;
  }
  // a check may be vacuous on a given system, the report as a whole may not
  void report(const Report& r, bool may_be_vacuous = false) {
    std::size_t instances = 0;
    for (const auto& c : r.checks()) {
      instances += c.instances;
      expect(c.pass, r.suite() + "/" + c.id + " " + c.witness.dump());
    }
    if (!may_be_vacuous) expect(instances > 0, r.suite() + " checked nothing");
  }
};

std::shared_ptr<const ElementTable> table_of(const char* label, std::size_t max_len = 0) {
  const auto sys = CoxeterSystem::from_label(label);
  return max_len ? std::make_shared<const ElementTable>(sys, max_len) : std::make_shared<const ElementTable>(sys);
}

std::shared_ptr<const hecke::HeckeAlgebra> algebra(const char* label, std::size_t max_len = 0) {
  return std::make_shared<const hecke::HeckeAlgebra>(table_of(label, max_len));
}

std::shared_ptr<const invmod::InvolutionModule> module(const char* label, std::size_t max_len = 0) {
  return std::make_shared<const invmod::InvolutionModule>(algebra(label, max_len));
}

LaurentPoly upoly(std::initializer_list<std::pair<int, int>> terms) {
  LaurentPoly p;
  for (auto [e, c] : terms) p = p + LaurentPoly::monomial(c, 2 * e);
  return p;
}
LaurentPoly um(int e) { return LaurentPoly::u_power(e); }

std::string alt(char first, std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(i % 2 == 0 ? first : (first == '1' ? '2' : '1'));
  return s;
}

using Table = std::vector<std::pair<std::string, LaurentPoly>>;

// e = (u-1)^k sum c T_x exactly on every x with l(x) <= up_to (all x when up_to = 0).
void expect_table(Tally& tally, const idealmod::IdealModule& I, const idealmod::CompletionElement& e, const std::string& name,
                  int k, const Table& terms, std::size_t up_to = 0) {
  const auto& t = I.table();
  LaurentPoly factor(1);
  for (int i = 0; i < k; ++i) factor = factor * (LaurentPoly::u_power(1) - 1);
  std::map<ElementId, LaurentPoly> want;
  for (const auto& [w, c] : terms) {
    const auto x = t.parse(w);
    tally.expect(t.length(x) == w.size(), name + ": listed word " + w + " is not reduced");
    want[x] = factor * c;
  }
  if (up_to) tally.expect(e.truncated ? e.exact_length >= up_to : true, name + ": exact window too short");
  for (auto x : t.ids()) {
    if (up_to && t.length(x) > up_to) break;
    const auto expect = want.count(x) ? RationalFn(want.at(x)) : RationalFn();
    tally.expect(e.coeff(x) == expect, name + ": coefficient of T_" + t.element(x).to_string());
  }
}

void expect_X(Tally& tally, const idealmod::IdealModule& I, const char* w, int k, const Table& terms, std::size_t up_to = 0) {
  expect_table(tally, I, I.X(I.table().parse(w)), std::string("X_") + w, k, terms, up_to);
}

// sum over star-fixed x of u^-l(x) T_x; here * = 1 so every x
Table x_empty_table(const ElementTable& t, std::size_t up_to) {
  Table rows;
  for (auto x : t.ids())
    if (!up_to || t.length(x) <= up_to) rows.emplace_back(t.element(x).to_string(), um(-static_cast<int>(t.length(x))));
  return rows;
}

// --- criteria ---------------------------------------------------------------

Tally paper_tables() {
  Tally tally;
  {
    const idealmod::IdealModule I(module("A1"));
    expect_table(tally, I, I.x_empty(), "A1 X_empty", 0, {{"", 1}, {"1", um(-1)}});
    expect_X(tally, I, "1", 1, {{"1", um(-1)}});
  }
  {
    // the displayed (-u)^-3 on T_121 is read as u^-3 (see the notes)
    const idealmod::IdealModule I(module("A2"));
    expect_table(tally, I, I.x_empty(), "A2 X_empty", 0,
                 {{"121", um(-3)}, {"12", um(-2)}, {"21", um(-2)}, {"1", um(-1)}, {"2", um(-1)}, {"", 1}});
    expect_X(tally, I, "1", 1, {{"121", um(-3)}, {"12", um(-2)}, {"1", um(-1)}});
    expect_X(tally, I, "2", 1, {{"121", um(-3)}, {"21", um(-2)}, {"2", um(-1)}});
    expect_X(tally, I, "121", 1, {{"121", upoly({{-1, 1}, {-2, 1}, {-3, -1}})}, {"12", um(-1)}, {"21", um(-1)}});
  }
  {
    const idealmod::IdealModule I(module("A3"));
    expect_table(tally, I, I.x_empty(), "A3 X_empty", 0, x_empty_table(I.table(), 0));
    expect_X(tally, I, "1", 1,
             {{"1", um(-1)}, {"12", um(-2)}, {"13", um(-2)}, {"121", um(-3)}, {"123", um(-3)}, {"132", um(-3)},
              {"1213", um(-4)}, {"1232", um(-4)}, {"1321", um(-4)}, {"13213", um(-5)}, {"12132", um(-5)},
              {"121321", um(-6)}});
    expect_X(tally, I, "3", 1,
             {{"3", um(-1)}, {"32", um(-2)}, {"13", um(-2)}, {"323", um(-3)}, {"321", um(-3)}, {"132", um(-3)},
              {"3231", um(-4)}, {"3212", um(-4)}, {"1323", um(-4)}, {"13213", um(-5)}, {"32312", um(-5)},
              {"121321", um(-6)}});
    expect_X(tally, I, "2", 1,
             {{"2", um(-1)}, {"21", um(-2)}, {"23", um(-2)}, {"121", um(-3)}, {"323", um(-3)}, {"213", um(-3)},
              {"1213", um(-4)}, {"3231", um(-4)}, {"2132", um(-4)}, {"32312", um(-5)}, {"12132", um(-5)},
              {"121321", um(-6)}});
    expect_X(tally, I, "13", 2,
             {{"13", um(-2)}, {"132", um(-3)}, {"1321", um(-4)}, {"1323", um(-4)}, {"13213", um(-5)}, {"121321", um(-6)}});
    const auto t3 = upoly({{-1, 1}, {-2, 1}, {-3, -1}});
    const auto t4 = upoly({{-2, 1}, {-3, 1}, {-4, -1}});
    const auto t5 = upoly({{-3, 1}, {-4, 1}, {-5, -1}});
    const auto t6 = upoly({{-4, 1}, {-5, 1}, {-6, -1}});
    expect_X(tally, I, "121", 1,
             {{"12", um(-1)}, {"21", um(-1)}, {"121", t3}, {"123", um(-2)}, {"213", um(-2)}, {"1213", t4},
              {"1323", um(-3)}, {"2132", um(-3)}, {"12132", t5}, {"13213", um(-4)}, {"21321", um(-4)}, {"121321", t6}});
    expect_X(tally, I, "323", 1,
             {{"32", um(-1)}, {"23", um(-1)}, {"323", t3}, {"321", um(-2)}, {"213", um(-2)}, {"3213", t4},
              {"1321", um(-3)}, {"2132", um(-3)}, {"32132", t5}, {"13213", um(-4)}, {"21323", um(-4)}, {"121321", t6}});
    expect_X(tally, I, "2132", 2,
             {{"213", um(-2)}, {"2132", um(-3)}, {"21321", um(-4)}, {"21323", um(-4)}, {"12321", um(-4)}, {"121321", t6}});
    expect_X(tally, I, "13213", 1,
             {{"132", um(-1)}, {"123", um(-1)}, {"321", um(-1)}, {"1321", t3}, {"3213", um(-2)}, {"1323", t3},
              {"1213", um(-2)}, {"2132", um(-2)}, {"21323", t4}, {"21321", t4},
              {"13213", upoly({{-2, 2}, {-3, 1}, {-4, -2}})},
              {"121321", upoly({{-2, 1}, {-3, 2}, {-4, -1}, {-5, -2}, {-6, 1}})}});
    expect_X(tally, I, "213213", 2,
             {{"1213", um(-2)}, {"2132", um(-2)}, {"2321", um(-2)}, {"21323", t4}, {"21321", t4},
              {"13231", upoly({{-2, 1}, {-4, -1}})},
              {"121321", upoly({{-2, 1}, {-3, 1}, {-4, -1}, {-5, -1}, {-6, 1}})}});
  }
  {
    // infinite dihedral, window 12, compared on T_x with l(x) <= 7
    const std::size_t L = 7;
    const idealmod::IdealModule I(module("Dinf", 12));
    expect_table(tally, I, I.x_empty(), "Dinf X_empty", 0, x_empty_table(I.table(), L), L);
    for (char first : {'1', '2'})
      for (std::size_t j = 0; j < 4; ++j) {
        Table rows;
        for (std::size_t k = 1; k + j <= L; ++k) rows.emplace_back(alt(first, k + j), um(-static_cast<int>(k)));
        expect_X(tally, I, alt(first, 2 * j + 1).c_str(), 1, rows, L);
      }
  }
  return tally;
}

void expect_fibers(Tally& tally, const idealmod::PiMap& pi, const ElementTable& t, const std::string& name,
                   const std::map<std::string, std::set<std::string>>& listed, bool complete) {
  for (const auto& [w, xs] : listed) {
    std::set<std::string> got, want;
    for (auto x : pi.fiber(t.parse(w))) got.insert(t.element(x).to_string());
    for (const auto& x : xs) want.insert(t.element(t.parse(x)).to_string());
    tally.expect(got == want, name + ": fiber of " + w);
  }
  if (complete) {
    std::size_t covered = 0;
    for (const auto& [w, xs] : listed) covered += xs.size();
    tally.expect(covered == t.size(), name + ": listed fibers do not cover W");
  }
}

Tally pi_fibers() {
  Tally tally;
  for (const char* label : {"A1", "A2", "A3"}) {
    const auto M = module(label);
    const idealmod::IdealModule I(M);
    const idealmod::PiMap pi(M->hecke().table_ptr());
    // in rank 1 no x has two left descents
    tally.report(pi.well_definedness(), std::string(label) == "A1");
    tally.report(idealmod::specialization_check(I, pi));
  }
  {
    const auto t = table_of("A1");
    expect_fibers(tally, idealmod::PiMap(t), *t, "A1", {{"", {""}}, {"1", {"1"}}}, true);
  }
  {
    const auto t = table_of("A2");
    expect_fibers(tally, idealmod::PiMap(t), *t, "A2", {{"", {""}}, {"1", {"1"}}, {"2", {"2"}}, {"121", {"12", "21", "121"}}},
                  true);
  }
  {
    const auto t = table_of("A3");
    expect_fibers(tally, idealmod::PiMap(t), *t, "A3",
                  {{"", {""}},
                   {"1", {"1"}},
                   {"2", {"2"}},
                   {"3", {"3"}},
                   {"13", {"13"}},
                   {"121", {"12", "21", "121"}},
                   {"323", {"32", "23", "323"}},
                   {"2132", {"213"}},
                   {"13213", {"132", "123", "321", "1321", "1323"}},
                   {"121321", {"1213", "2132", "2321", "21323", "21321", "13231", "121321"}}},
                  true);
  }
  {
    // listed values, and the listed pattern continued to every w of length <= 11
    const std::size_t N = 12;
    const auto M = module("Dinf", N);
    const auto& t = M->table();
    const idealmod::PiMap pi(M->hecke().table_ptr());
    std::map<std::string, std::set<std::string>> listed{{"", {""}}, {"1", {"1"}}, {"2", {"2"}}};
    for (char first : {'1', '2'})
      for (std::size_t j = 1; 2 * j + 1 < N; ++j) listed[alt(first, 2 * j + 1)] = {alt(first, j + 1)};
    expect_fibers(tally, pi, t, "Dinf", listed, false);
    // every x has a single left descent here
    tally.report(pi.well_definedness(), true);
    const idealmod::IdealModule I(M);
    tally.report(idealmod::specialization_check(I, pi));
  }
  return tally;
}

std::shared_ptr<const invmod::CmModule> cm_of(const char* label) {
  const auto H = algebra(label);
  auto M = std::make_shared<const invmod::InvolutionModule>(H);
  auto C = std::make_shared<const cells::CellData>(H);
  return std::make_shared<const invmod::CmModule>(M, C);
}

const std::set<std::string> kTheorem06 = {"associativity", "unit", "two-sided-blocks", "left-cell-restriction"};
const std::set<std::string> kLeading = {"leading-term", "beta-cells", "f-support"};

void expect_checks(Tally& tally, const Report& r, const std::set<std::string>& ids, std::size_t min_assoc = 0) {
  for (const auto& id : ids) {
    const auto* c = r.find(id);
    tally.expect(c != nullptr, r.suite() + ": missing check " + id);
    if (!c) continue;
    tally.expect(c->pass && c->instances > 0, r.suite() + "/" + id + " " + c->witness.dump());
    if (id == "associativity") tally.expect(c->instances >= min_assoc, "too few associativity triples");
  }
}

Tally theorem06() {
  Tally tally;
  for (const char* label : {"A2", "B2"}) expect_checks(tally, invmod::verify_section1(*cm_of(label)), kTheorem06);
  invmod::Section1Options random;
  random.random_triples = 10000;
  random.seed = 2024;
  expect_checks(tally, invmod::verify_section1(*cm_of("A3"), random), kTheorem06, 10000);
  return tally;
}

Tally leading_term() {
  Tally tally;
  for (const char* label : {"A2", "A3", "B2"}) expect_checks(tally, invmod::verify_section1(*cm_of(label)), kLeading);
  return tally;
}

Tally kl_layer() {
  Tally tally;
  for (const char* label : {"A2", "A3", "B2", "G2"}) tally.report(suites::kl_suite(*algebra(label)));
  const auto H = algebra("A3");
  const auto& t = H->table();
  const auto one_plus_u = LaurentPoly::u_power(1) + 1;
  std::set<std::pair<std::string, std::string>> got;
  for (auto [y, w] : suites::nontrivial_kl(*H)) {
    tally.expect(H->kl_poly(y, w) == one_plus_u, "A3 nontrivial value other than 1+u");
    got.emplace(t.element(y).to_string(), t.element(w).to_string());
  }
  tally.expect(H->kl_poly(t.parse("2"), t.parse("2132")) == one_plus_u, "P_{2,2132} != 1+u");
  // frozen from the solver oracle: y <= 2 under 2132 and y <= 13 under 12321
  const std::set<std::pair<std::string, std::string>> expected{
      {"", "2132"}, {"2", "2132"}, {"", "12321"}, {"1", "12321"}, {"3", "12321"}, {"13", "12321"}};
  tally.expect(got == expected, "A3 nontrivial pairs");
  return tally;
}

Tally bar_a_basis() {
  Tally tally;
  for (const char* label : {"A2", "A3", "B2"}) tally.report(invmod::verify_module(*module(label)));
  const auto D = module("Dinf", 11);
  tally.expect(D->bar_length_bound() >= 9, "Dinf bar bound below 9");
  tally.report(invmod::verify_module(*D));
  return tally;
}

// Independent brute-force count of sigma-stable (orbit, character) pairs.
std::size_t brute_kbar_rank(const eqvb::GammaSet& X) {
  const auto n = static_cast<std::uint32_t>(X.size());
  std::set<std::set<std::uint32_t>> orbs;
  for (std::uint32_t q = 0; q < n * n; ++q) {
    std::set<std::uint32_t> o;
    for (eqvb::Elem g = 0; g < X.order(); ++g) o.insert(X.act(g, q / n) * n + X.act(g, q % n));
    orbs.insert(o);
  }
  std::size_t rank = 0;
  for (const auto& o : orbs) {
    const auto p = *o.begin();
    if (!o.count((p % n) * n + p / n)) continue;
    // characters of an elementary abelian stabilizer: as many as its elements
    for (eqvb::Elem g = 0; g < X.order(); ++g) rank += X.act(g, p / n) == p / n && X.act(g, p % n) == p % n;
  }
  return rank;
}

std::size_t orbit_count(const eqvb::GammaSet& X) {
  std::set<std::set<std::uint32_t>> orbs;
  for (std::uint32_t x = 0; x < X.size(); ++x) {
    std::set<std::uint32_t> o;
    for (eqvb::Elem g = 0; g < X.order(); ++g) o.insert(X.act(g, x));
    orbs.insert(o);
  }
  return orbs.size();
}

Tally equivariant_count() {
  Tally tally;
  using eqvb::GammaSet;
  const std::vector<GammaSet> library{
      GammaSet::from_cosets(0, {{}, {}, {}}),
      GammaSet::from_cosets(0, {{}, {}, {}, {}, {}}),
      GammaSet::from_cosets(1, {{1}}),
      GammaSet::from_cosets(1, {{}}),
      GammaSet::from_cosets(1, {{1}, {1}, {}}),
      GammaSet::from_cosets(1, {{}, {}, {1}}),
      GammaSet::from_cosets(2, {{1, 2}}),
      GammaSet::from_cosets(2, {{}}),
      GammaSet::from_cosets(2, {{1}, {2}, {3}}),
      GammaSet::from_cosets(2, {{1, 2}, {}, {1}}),
      GammaSet::from_generators(2, 4, {{1, 0, 3, 2}, {0, 1, 3, 2}}),
      GammaSet::from_cosets(2, {{}, {}, {3}, {3}}),
  };
  tally.expect(library.size() >= 10, "library has fewer than 10 pairs");
  for (std::size_t i = 0; i < library.size(); ++i) {
    const auto& X = library[i];
    const std::string name = "config " + std::to_string(i);
    tally.expect(X.rank() <= 2 && X.size() <= 12, name + " outside r <= 2, |X| <= 12");
    const eqvb::Structure S(X);
    const auto expected = static_cast<std::size_t>(X.order()) * orbit_count(X);
    tally.expect(S.self_dual().size() == expected, name + ": rank of Kbar");
    tally.expect(brute_kbar_rank(X) == expected, name + ": brute-force enumeration");
    tally.report(eqvb::count_check(S));
    tally.report(eqvb::verify_structure(S));
  }
  return tally;
}

Tally cell_consistency() {
  Tally tally;
  for (const char* label : {"A2", "A3", "B2"}) {
    const auto H = algebra(label);
    const cells::CellData C(H);
    const invmod::InvolutionModule M(H);
    const auto& part = C.partition();
    bool saw_b2_middle = false;
    for (std::size_t c = 0; c < part.two_sided.size(); ++c) {
      std::set<int> lefts;
      for (auto w : part.two_sided[c]) lefts.insert(part.left_of[w.value]);
      std::size_t invols = 0;
      for (auto w : M.involutions()) invols += part.two_sided_of[w.value] == static_cast<int>(c);
      const auto size = part.two_sided[c].size();
      const bool b2 = std::string(label) == "B2";
      // Gamma data: trivial in type A; B2 only for its middle cell, Z/2 with
      // Gamma_lambda = Gamma and 1 on the two left cells
      if (b2 && size != 6) continue;
      saw_b2_middle |= b2;
      const eqvb::CellGroupData data = b2 ? eqvb::CellGroupData{1, {{1}, {}}}
                                          : eqvb::CellGroupData{0, std::vector<std::vector<eqvb::Elem>>(lefts.size())};
      tally.report(eqvb::cell_consistency(data, size, lefts.size(), invols));
    }
    if (std::string(label) == "B2") tally.expect(saw_b2_middle, "B2 middle cell not found");
  }
  return tally;
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Tally()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "paper X_w tables (A1, A2, A3, Dinf to length 7)", 10, paper_tables},
      {2, "pi fibers, specialization and length identity", 5, pi_fibers},
      {3, "J-module associativity, unit and block laws", 120, theorem06},
      {4, "leading-term law and support on A2, A3, B2", 120, leading_term},
      {5, "KL recursion against the bar solver", 30, kl_layer},
      {6, "bar involution and A-basis (A2, A3, B2, Dinf to length 9)", 60, bar_a_basis},
      {7, "equivariant counting and bundle axioms", 60, equivariant_count},
      {8, "cell consistency (A2, A3, B2 middle cell)", 30, cell_consistency},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Tally t;
    std::string error;
    try {
      t = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_s;
    const bool pass = error.empty() && t.failures == 0 && t.checks > 0 && in_time;
    failed += !pass;
    std::printf("%s criterion %d: %s (%zu checks, %.2f s, limit %.0f s)", pass ? "PASS" : "FAIL", c.id, c.name, t.checks,
                secs, c.limit_s);
    if (!error.empty()) std::printf(" exception: %s", error.c_str());
    if (t.failures) std::printf(" %zu failures: %s", t.failures, t.first.c_str());
    if (!in_time) std::printf(" over time limit");
    std::printf("\n");
  }
  std::fflush(stdout);
  return failed;
}

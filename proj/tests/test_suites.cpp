#include <set>

#include "doctest.h"
#include "hinv/suites.hpp"

using namespace hinv;
using coxeter::CoxeterSystem;
using coxeter::ElementTable;

namespace {

std::shared_ptr<hecke::HeckeAlgebra> algebra(const char* label, std::shared_ptr<const hecke::KLTable> kl = nullptr) {
  auto t = std::make_shared<const ElementTable>(CoxeterSystem::from_label(label));
  return std::make_shared<hecke::HeckeAlgebra>(t, std::move(kl));
}

void require_pass(const Report& r) {
  for (const auto& c : r.checks()) {
    INFO(r.suite() << "/" << c.id << " witness " << c.witness.dump());
    CHECK(c.pass);
    CHECK(c.instances > 0);
  }
}

}  // namespace

TEST_CASE("kl suite passes and detects a corrupted table") {
  for (const char* label : {"A2", "A3", "B2", "G2"}) require_pass(suites::kl_suite(*algebra(label)));
  const auto good = algebra("A3");
  auto data = good->kl().raw();
  const auto& t = good->table();
  const std::size_t n = t.size();
  data[t.parse("2132").value * n + t.parse("2").value] = LaurentPoly(1);
  const auto bad = algebra("A3", std::make_shared<const hecke::KLTable>(n, data));
  const auto rep = suites::kl_suite(*bad);
  CHECK_FALSE(rep.find("recursion-vs-solver")->pass);
}

TEST_CASE("nontrivial KL pairs of A3") {
  const auto H = algebra("A3");
  const auto& t = H->table();
  std::set<std::pair<std::string, std::string>> got;
  for (auto [y, w] : suites::nontrivial_kl(*H)) {
    CHECK(H->kl_poly(y, w) == LaurentPoly::u_power(1) + 1);
    got.emplace(t.element(y).to_string(), t.element(w).to_string());
  }
  CHECK(got.count({"2", "2132"}) == 1);
  CHECK(got.size() == 6);
}

TEST_CASE("jring suite") {
  for (const char* label : {"A2", "B2"}) require_pass(suites::jring_suite(cells::CellData(algebra(label))));
  require_pass(suites::jring_suite(cells::CellData(algebra("A3")), {2000, 5}));
}

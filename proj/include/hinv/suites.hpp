// Report-producing verifiers for the lower layers: the KL table against an
// independent bar-invariance solve, and the ring J.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hinv/cells.hpp"
#include "hinv/hecke.hpp"
#include "hinv/report.hpp"

namespace hinv::suites {

/// Recursion against the triangular solver (bar built along the last letter
/// with right multiplication), support in the Bruhat interval, constant term
/// 1, even support and the degree bound.
Report kl_suite(const hecke::HeckeAlgebra& H);

/// Pairs y <= w with P_{y,w} different from 1, in table order.
std::vector<std::pair<coxeter::ElementId, coxeter::ElementId>> nontrivial_kl(const hecke::HeckeAlgebra& H);

struct JOptions {
  std::size_t random_triples = 0;  // 0: exhaustive associativity
  std::uint64_t seed = 1;
};

/// Associativity, unit, vanishing across two-sided cells, gamma support and
/// the two-sided and left-cell blocks.
Report jring_suite(const cells::CellData& C, const JOptions& options = {});

}  // namespace hinv::suites

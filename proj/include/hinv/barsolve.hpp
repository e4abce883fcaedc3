// Triangular solve for bar-invariant elements of KL type.
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "hinv/laurent.hpp"

namespace hinv {

/// Basis b_0..b_{n-1}, ordered so that bar(b_y) = sum_{z <= y} R(z, y) b_z
/// with R(y, y) = 1. Returns the unique p with p[n-1] = 1, p[z] in
/// v^-1 Z[v^-1] for z < n-1 and sum p_z b_z bar-invariant.
///
/// R is only queried for z < y. Throws std::logic_error if some step is not
/// anti-invariant, which means no such element exists.
std::vector<LaurentPoly> solve_bar_invariant(std::size_t n,
                                             const std::function<LaurentPoly(std::size_t z, std::size_t y)>& R);

}  // namespace hinv

// Equivariant vector bundles on X x X for an elementary abelian 2-group
// Gamma = F_2^r acting on a finite set X: the convolution ring K(C_0), the
// sigma-twist, the quotient Kbar(C) of self-dual pairs (U, kappa), the
// circle action of K(C_0) on Kbar(C), and the homomorphisms Psi and nu from
// bundles on Gamma.
//
// Group elements are bit masks g < 2^r. The characters of Gamma are
// chi_a(g) = (-1)^{popcount(a & g)}; a character of a subgroup H is named by
// the least a restricting to it.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "json.hpp"
#include "hinv/report.hpp"

namespace hinv::eqvb {

using Elem = std::uint32_t;

inline int chi(Elem a, Elem g) { return __builtin_popcount(a & g) % 2 == 0 ? 1 : -1; }

class GammaSet {
 public:
  /// act[g][x] for every g < 2^rank; validated as an action.
  GammaSet(int rank, std::vector<std::vector<std::uint32_t>> act);
  /// Action generated by commuting involutions gens[i] (images of the basis vector e_i).
  static GammaSet from_generators(int rank, std::size_t points, const std::vector<std::vector<std::uint32_t>>& gens);
  /// Disjoint union of Gamma / H_k, each H_k given by generators.
  static GammaSet from_cosets(int rank, const std::vector<std::vector<Elem>>& subgroup_generators);

  [[nodiscard]] int rank() const { return rank_; }
  [[nodiscard]] Elem order() const { return Elem{1} << rank_; }
  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] std::uint32_t act(Elem g, std::uint32_t x) const { return act_[g][x]; }
  [[nodiscard]] nlohmann::json to_json() const;

 private:
  int rank_;
  std::size_t n_;
  std::vector<std::vector<std::uint32_t>> act_;
};

/// Orbit of Gamma on a set with points encoded as integers.
struct Orbit {
  std::vector<std::uint32_t> points;  // ascending; points.front() is the base point
  std::vector<Elem> stabilizer;       // ascending
  std::map<std::uint32_t, Elem> rep;  // q -> least g with g(base) = q
  std::vector<Elem> characters;       // least representatives, ascending
};

/// One indecomposable bundle: a Gamma-orbit on X x X and a character of its stabilizer.
struct Indecomposable {
  int orbit;
  Elem character;
};

/// Integer combination of indecomposables (index into Structure::indecomposables()).
using BundleClass = std::map<int, std::int64_t>;
/// Integer combination of the self-dual indecomposables with the canonical kappa
/// (keys are indices into Structure::indecomposables()).
using SignedClass = std::map<int, std::int64_t>;

/// A bundle on Gamma (conjugation action is trivial): at each g a
/// representation of Gamma given by character multiplicities.
struct GammaBundle {
  std::vector<std::map<Elem, std::int64_t>> fibers;  // fibers[g][a] = multiplicity of chi_a in Y_g
};

/// Small integer matrix.
struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<std::int64_t> a;
  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
  std::int64_t& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

/// A concrete Gamma-equivariant bundle on X x X (point q = x * |X| + y):
/// fiber dimensions and the maps tau_g : V_q -> V_{gq}.
struct Bundle {
  std::vector<std::size_t> dim;
  std::vector<std::vector<Mat>> tau;  // tau[g][q]
};

/// A pair (U, kappa), kappa_q : U_q -> U_{sigma q}.
struct Object {
  Bundle U;
  std::vector<Mat> kappa;
};

class Structure {
 public:
  explicit Structure(GammaSet X);

  [[nodiscard]] const GammaSet& gamma_set() const { return X_; }
  [[nodiscard]] const std::vector<Orbit>& x_orbits() const { return x_orbits_; }
  [[nodiscard]] const std::vector<Orbit>& pair_orbits() const { return pair_orbits_; }
  [[nodiscard]] const std::vector<Indecomposable>& indecomposables() const { return indec_; }
  /// Indices of indecomposables V with V isomorphic to V^sigma: the signed basis of Kbar(C).
  [[nodiscard]] const std::vector<int>& self_dual() const { return self_dual_; }
  [[nodiscard]] int index_of(int orbit, Elem character) const;
  [[nodiscard]] int orbit_of_point(std::uint32_t q) const { return orbit_of_pair_[q]; }
  [[nodiscard]] BundleClass unit() const;  // C_Delta

  // Materialized constructions.
  [[nodiscard]] Bundle realize(const BundleClass& v) const;  // nonnegative multiplicities
  /// Negative coefficients use -kappa.
  [[nodiscard]] Object realize_signed(const SignedClass& u) const;
  [[nodiscard]] Bundle convolve(const Bundle& a, const Bundle& b) const;
  [[nodiscard]] Bundle sigma(const Bundle& v) const;
  [[nodiscard]] Bundle dual(const Bundle& v) const;
  [[nodiscard]] Bundle direct_sum(const Bundle& a, const Bundle& b) const;
  [[nodiscard]] Object circ(const Bundle& v, const Object& u) const;
  [[nodiscard]] Object theta(const Bundle& v) const;
  [[nodiscard]] BundleClass decompose(const Bundle& v) const;
  [[nodiscard]] SignedClass decompose(const Object& u) const;
  [[nodiscard]] Bundle psi(const GammaBundle& y) const;
  /// tau_g kappa_q = kappa_{gq} tau_g and kappa_{sigma q} kappa_q = 1 at every q.
  [[nodiscard]] bool is_sigma_structure(const Object& u) const;

  // Class-level operations (structure constants are materialized once).
  [[nodiscard]] BundleClass convolve(const BundleClass& a, const BundleClass& b) const;
  /// Oracle: the same structure constant from the character formula.
  [[nodiscard]] std::int64_t convolve_formula(int i, int j, int k) const;
  [[nodiscard]] BundleClass sigma(const BundleClass& v) const;
  [[nodiscard]] SignedClass circ(const BundleClass& v, const SignedClass& u) const;

  [[nodiscard]] nlohmann::json to_json() const;

 private:
  GammaSet X_;
  std::vector<Orbit> x_orbits_;
  std::vector<Orbit> pair_orbits_;
  std::vector<int> orbit_of_pair_;
  std::vector<int> sigma_orbit_;
  std::vector<Indecomposable> indec_;
  std::vector<int> self_dual_;
  std::vector<std::vector<BundleClass>> products_;  // [i][j]
  std::vector<std::vector<SignedClass>> circ_;      // [i][j], j self-dual

  [[nodiscard]] std::uint32_t pair_act(Elem g, std::uint32_t q) const;
  [[nodiscard]] std::uint32_t swap(std::uint32_t q) const;
};

GammaBundle gamma_unit(int rank);
GammaBundle gamma_simple(int rank, Elem g, Elem a);
GammaBundle convolve(const GammaBundle& a, const GammaBundle& b);
std::int64_t nu(const GammaBundle& y);

/// Ring axioms of K(C_0) (materialized against the character formula),
/// sigma, the circle action and its Theta relations, and Psi.
Report verify_structure(const Structure& S);

/// Rank of Kbar(C) against |Gamma| times the number of orbits on X, and the
/// scalar action of every simple bundle on Gamma.
Report count_check(const Structure& S);

/// Cell data for a two-sided cell: Gamma of rank r and one subgroup per left cell.
struct CellGroupData {
  int rank = 0;
  std::vector<std::vector<Elem>> subgroups;  // generators of Gamma_lambda, one entry per left cell
};

/// Compares the J-module data of a two-sided cell with the bundle side built
/// on X = disjoint union of Gamma / Gamma_lambda.
Report cell_consistency(const CellGroupData& data, std::size_t cell_size, std::size_t left_cells,
                        std::size_t involutions_in_cell);

nlohmann::json class_to_json(const Structure& S, const BundleClass& v);

}  // namespace hinv::eqvb

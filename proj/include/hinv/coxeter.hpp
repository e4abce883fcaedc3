// Coxeter systems (W, S): element arithmetic in ShortLex normal form,
// descents, Bruhat order, the diagram involution *, and enumeration.

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace hinv::coxeter {

/// Coxeter matrix entry encoding m(i, j) = infinity.
inline constexpr int kInfinity = 0;

using Generator = std::uint8_t;
using Word = std::vector<Generator>;

class CoxeterSystem;

/// A group element, stored as its ShortLex normal form: the
/// lexicographically least reduced word. Equal elements have equal words.
class CoxeterElement {
 public:
  CoxeterElement() = default;

  [[nodiscard]] const Word& word() const { return word_; }
  [[nodiscard]] std::size_t length() const { return word_.size(); }
  [[nodiscard]] bool is_identity() const { return word_.empty(); }
  [[nodiscard]] std::uint64_t system_id() const { return system_id_; }

  /// Digit string over 1-based generator labels, "" for the identity.
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const CoxeterElement& a, const CoxeterElement& b) {
    return a.system_id_ == b.system_id_ && a.word_ == b.word_;
  }
  friend bool operator!=(const CoxeterElement& a, const CoxeterElement& b) { return !(a == b); }
  /// Enumeration order: by length, then lexicographically.
  friend bool operator<(const CoxeterElement& a, const CoxeterElement& b) {
    if (a.word_.size() != b.word_.size()) return a.word_.size() < b.word_.size();
    return a.word_ < b.word_;
  }

 private:
  friend class CoxeterSystem;
  CoxeterElement(Word w, std::uint64_t id) : word_(std::move(w)), system_id_(id) {}

  Word word_;
  std::uint64_t system_id_ = 0;
};

/// Integral matrix model of the geometric representation on the root basis,
/// available when every m(i, j) lies in {2, 3, 4, 6, infinity}.
class ReflectionRep {
 public:
  static std::optional<ReflectionRep> build(int rank, std::span<const int> matrix);

  [[nodiscard]] int rank() const { return rank_; }
  /// Cartan entry a(i, j): s_i(alpha_j) = alpha_j - a(i, j) alpha_i.
  [[nodiscard]] std::int64_t cartan(int i, int j) const { return cartan_[i * rank_ + j]; }

  /// s_i applied to the vector x (coordinates on the simple roots).
  void reflect(int i, std::vector<std::int64_t>& x) const;
  /// Matrix (row-major) of the element with the given word.
  [[nodiscard]] std::vector<std::int64_t> matrix_of(std::span<const Generator> word) const;
  /// w(alpha_i) for w given by word.
  [[nodiscard]] std::vector<std::int64_t> image_of_root(std::span<const Generator> word, int i) const;

 private:
  int rank_ = 0;
  std::vector<std::int64_t> cartan_;
};

/// A Coxeter system given by its Coxeter matrix and a diagram involution *.
/// Immutable after construction.
class CoxeterSystem {
 public:
  /// matrix: row-major rank x rank, m(i,i) = 1, kInfinity for infinity.
  /// star: 0-based permutation of generators (empty = identity).
  CoxeterSystem(int rank, std::vector<int> matrix, std::vector<int> star = {}, std::string label = {});

  /// "A1".."A8", "B2".., "D4".., "G2", "H3", "I2(m)", "Dinf" (infinite dihedral).
  static CoxeterSystem from_label(std::string_view label, std::vector<int> star = {});
  /// With the star permutation changed; keeps matrix and label.
  [[nodiscard]] CoxeterSystem with_star(std::vector<int> star) const;

  [[nodiscard]] int rank() const { return rank_; }
  [[nodiscard]] int m(int i, int j) const { return matrix_[i * rank_ + j]; }
  [[nodiscard]] const std::vector<int>& matrix() const { return matrix_; }
  [[nodiscard]] int star_of(int i) const { return star_[i]; }
  [[nodiscard]] const std::vector<int>& star_permutation() const { return star_; }
  [[nodiscard]] bool star_is_identity() const;
  [[nodiscard]] const std::string& label() const { return label_; }
  /// Stable hash of (matrix, star); identifies the system in elements and caches.
  [[nodiscard]] std::uint64_t content_hash() const { return id_; }
  [[nodiscard]] bool is_finite() const { return finite_; }
  [[nodiscard]] const std::optional<ReflectionRep>& reflection_rep() const { return rep_; }

  [[nodiscard]] CoxeterElement identity() const { return {{}, id_}; }
  [[nodiscard]] CoxeterElement generator(int i) const;
  /// Normal form of an arbitrary (not necessarily reduced) word.
  [[nodiscard]] CoxeterElement from_word(std::span<const Generator> word) const;
  /// Parses a digit string over 1-based labels; "" or "e" is the identity.
  [[nodiscard]] CoxeterElement parse(std::string_view digits) const;

  [[nodiscard]] CoxeterElement multiply(const CoxeterElement& a, const CoxeterElement& b) const;
  [[nodiscard]] CoxeterElement left_multiply(int s, const CoxeterElement& w) const;
  [[nodiscard]] CoxeterElement right_multiply(const CoxeterElement& w, int s) const;
  [[nodiscard]] CoxeterElement inverse(const CoxeterElement& w) const;
  [[nodiscard]] CoxeterElement star(const CoxeterElement& w) const;

  /// {i : l(s_i w) < l(w)}, ascending.
  [[nodiscard]] std::vector<int> left_descents(const CoxeterElement& w) const;
  /// {i : l(w s_i) < l(w)}, ascending.
  [[nodiscard]] std::vector<int> right_descents(const CoxeterElement& w) const;
  [[nodiscard]] bool is_left_descent(int s, const CoxeterElement& w) const;
  [[nodiscard]] bool is_right_descent(const CoxeterElement& w, int s) const;

  [[nodiscard]] bool bruhat_leq(const CoxeterElement& y, const CoxeterElement& w) const;

  /// All elements of length <= max_len, sorted by (length, normal form).
  [[nodiscard]] std::vector<CoxeterElement> enumerate(std::size_t max_len) const;
  /// I_* = {w : w* = w^-1} up to the length bound, same order.
  [[nodiscard]] std::vector<CoxeterElement> twisted_involutions(std::size_t max_len) const;
  [[nodiscard]] bool is_twisted_involution(const CoxeterElement& w) const;

  /// Normal form computed by word rewriting alone (braid moves and ss
  /// deletion), independent of the reflection representation.
  [[nodiscard]] Word rewrite_normal_form(std::span<const Generator> word) const;
  /// All reduced words of a reduced word's element (braid-move closure).
  [[nodiscard]] std::vector<Word> reduced_words(std::span<const Generator> reduced) const;

 private:
  int rank_;
  std::vector<int> matrix_;
  std::vector<int> star_;
  std::string label_;
  std::uint64_t id_;
  bool finite_;
  std::optional<ReflectionRep> rep_;

  void require_same(const CoxeterElement& w) const;
  [[nodiscard]] Word normal_form(std::span<const Generator> word) const;
  [[nodiscard]] std::vector<Word> braid_class(const Word& word) const;
};

/// Strong index into an ElementTable.
struct ElementId {
  std::uint32_t value = 0;
  friend auto operator<=>(const ElementId&, const ElementId&) = default;
};

inline constexpr std::uint32_t kOutside = 0xffffffffu;

/// An enumerated window {w : l(w) <= max_len} of W with multiplication
/// tables by generators. The window is complete when W is finite and the
/// bound covers the longest element; lookups leaving the window give
/// kOutside.
class ElementTable {
 public:
  explicit ElementTable(const CoxeterSystem& sys,
                        std::size_t max_len = std::numeric_limits<std::size_t>::max());

  [[nodiscard]] const CoxeterSystem& system() const { return sys_; }
  [[nodiscard]] std::size_t size() const { return elements_.size(); }
  [[nodiscard]] bool complete() const { return complete_; }
  [[nodiscard]] std::size_t max_length() const { return max_len_; }

  [[nodiscard]] const CoxeterElement& element(ElementId x) const { return elements_[x.value]; }
  [[nodiscard]] std::size_t length(ElementId x) const { return elements_[x.value].length(); }
  [[nodiscard]] std::optional<ElementId> find(const CoxeterElement& w) const;
  [[nodiscard]] ElementId id(const CoxeterElement& w) const;  // throws if outside
  [[nodiscard]] ElementId parse(std::string_view digits) const { return id(sys_.parse(digits)); }
  [[nodiscard]] ElementId identity() const { return ElementId{0}; }

  /// s x and x s; kOutside when the product leaves the window.
  [[nodiscard]] std::uint32_t left(int s, ElementId x) const { return left_[s][x.value]; }
  [[nodiscard]] std::uint32_t right(ElementId x, int s) const { return right_[s][x.value]; }
  [[nodiscard]] ElementId left_in(int s, ElementId x) const;   // throws if outside
  [[nodiscard]] ElementId right_in(ElementId x, int s) const;  // throws if outside
  [[nodiscard]] bool is_left_descent(int s, ElementId x) const { return descent_left_[x.value] >> s & 1u; }
  [[nodiscard]] bool is_right_descent(ElementId x, int s) const { return descent_right_[x.value] >> s & 1u; }

  [[nodiscard]] ElementId inverse(ElementId x) const { return ElementId{inverse_[x.value]}; }
  [[nodiscard]] ElementId star(ElementId x) const { return ElementId{star_[x.value]}; }
  [[nodiscard]] ElementId multiply(ElementId x, ElementId y) const;  // throws if outside

  /// y <= x in the Bruhat order.
  [[nodiscard]] bool bruhat_leq(ElementId y, ElementId x) const { return bruhat_down_[x.value].test(y.value); }

  /// Ids in table order (length, then normal form).
  [[nodiscard]] std::vector<ElementId> ids() const;

 private:
  CoxeterSystem sys_;
  std::size_t max_len_;
  bool complete_ = false;
  std::vector<CoxeterElement> elements_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<std::vector<std::uint32_t>> left_;
  std::vector<std::vector<std::uint32_t>> right_;
  std::vector<std::uint32_t> descent_left_;
  std::vector<std::uint32_t> descent_right_;
  std::vector<std::uint32_t> inverse_;
  std::vector<std::uint32_t> star_;
  std::vector<boost::dynamic_bitset<>> bruhat_down_;
};

}  // namespace hinv::coxeter

#include "hinv/coxeter.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <set>
#include <stdexcept>

namespace hinv::coxeter {

namespace {

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t value) {
  for (int b = 0; b < 8; ++b) {
    h ^= (value >> (8 * b)) & 0xffu;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string key_of(const Word& w) { return {w.begin(), w.end()}; }

// Sylvester test on B(i,j) = -cos(pi/m(i,j)); affine forms have a vanishing
// minor, which the tolerance classifies as not positive definite.
bool positive_definite_form(int n, const std::vector<int>& m) {
  std::vector<double> b(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int mij = m[i * n + j];
      b[i * n + j] = mij == kInfinity ? -1.0 : -std::cos(std::numbers::pi / mij);
    }
  // Gaussian elimination without pivoting: all pivots positive iff positive definite.
  for (int k = 0; k < n; ++k) {
    if (b[k * n + k] < 1e-9) return false;
    for (int i = k + 1; i < n; ++i) {
      const double f = b[i * n + k] / b[k * n + k];
      for (int j = k; j < n; ++j) b[i * n + j] -= f * b[k * n + j];
    }
  }
  return true;
}

bool is_alternating_prefix(const Word& w, std::size_t pos, Generator a, Generator b, int len) {
  if (pos + len > w.size()) return false;
  for (int k = 0; k < len; ++k)
    if (w[pos + k] != (k % 2 == 0 ? a : b)) return false;
  return true;
}

}  // namespace

std::string CoxeterElement::to_string() const {
  std::string s;
  for (Generator g : word_) s.push_back(static_cast<char>('1' + g));
  return s;
}

// ---------------------------------------------------------------------------
// ReflectionRep

std::optional<ReflectionRep> ReflectionRep::build(int rank, std::span<const int> matrix) {
  ReflectionRep rep;
  rep.rank_ = rank;
  rep.cartan_.assign(rank * rank, 0);
  for (int i = 0; i < rank; ++i) rep.cartan_[i * rank + i] = 2;
  for (int i = 0; i < rank; ++i)
    for (int j = i + 1; j < rank; ++j) {
      std::int64_t a = 0;
      std::int64_t b = 0;
      switch (matrix[i * rank + j]) {
        case 2: break;
        case 3: a = b = -1; break;
        case 4: a = -2; b = -1; break;
        case 6: a = -3; b = -1; break;
        case kInfinity: a = b = -2; break;
        default: return std::nullopt;
      }
      rep.cartan_[i * rank + j] = a;
      rep.cartan_[j * rank + i] = b;
    }
  // Require symmetrizability so root signs match the geometric representation.
  std::vector<double> d(rank, 0.0);
  for (int start = 0; start < rank; ++start) {
    if (d[start] != 0.0) continue;
    d[start] = 1.0;
    std::deque<int> queue{start};
    while (!queue.empty()) {
      const int i = queue.front();
      queue.pop_front();
      for (int j = 0; j < rank; ++j) {
        const auto aij = rep.cartan(i, j);
        if (i == j || aij == 0) continue;
        const double dj = d[i] * static_cast<double>(aij) / static_cast<double>(rep.cartan(j, i));
        if (d[j] == 0.0) {
          d[j] = dj;
          queue.push_back(j);
        } else if (std::abs(d[j] - dj) > 1e-9 * std::abs(dj)) {
          return std::nullopt;
        }
      }
    }
  }
  return rep;
}

void ReflectionRep::reflect(int i, std::vector<std::int64_t>& x) const {
  std::int64_t c = 0;
  for (int k = 0; k < rank_; ++k) c += cartan(i, k) * x[k];
  x[i] -= c;
}

std::vector<std::int64_t> ReflectionRep::matrix_of(std::span<const Generator> word) const {
  std::vector<std::int64_t> out(rank_ * rank_, 0);
  for (int j = 0; j < rank_; ++j) {
    auto col = image_of_root(word, j);
    for (int i = 0; i < rank_; ++i) out[i * rank_ + j] = col[i];
  }
  return out;
}

std::vector<std::int64_t> ReflectionRep::image_of_root(std::span<const Generator> word, int i) const {
  std::vector<std::int64_t> x(rank_, 0);
  x[i] = 1;
  for (auto it = word.rbegin(); it != word.rend(); ++it) reflect(*it, x);
  return x;
}

// ---------------------------------------------------------------------------
// CoxeterSystem

CoxeterSystem::CoxeterSystem(int rank, std::vector<int> matrix, std::vector<int> star, std::string label)
    : rank_(rank), matrix_(std::move(matrix)), star_(std::move(star)), label_(std::move(label)) {
  if (rank_ < 1 || rank_ > 9) throw std::invalid_argument("rank must be between 1 and 9");
  if (static_cast<int>(matrix_.size()) != rank_ * rank_)
    throw std::invalid_argument("Coxeter matrix has wrong size");
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) {
      const int v = matrix_[i * rank_ + j];
      if (v != matrix_[j * rank_ + i]) throw std::invalid_argument("Coxeter matrix is not symmetric");
      if (i == j && v != 1) throw std::invalid_argument("Coxeter matrix needs m(i,i) = 1");
      if (i != j && v != kInfinity && v < 2) throw std::invalid_argument("Coxeter matrix entries must be >= 2 or infinity");
    }
  if (star_.empty()) {
    star_.resize(rank_);
    for (int i = 0; i < rank_; ++i) star_[i] = i;
  }
  if (static_cast<int>(star_.size()) != rank_) throw std::invalid_argument("star permutation has wrong size");
  std::vector<bool> seen(rank_, false);
  for (int i = 0; i < rank_; ++i) {
    const int t = star_[i];
    if (t < 0 || t >= rank_ || seen[t]) throw std::invalid_argument("star is not a permutation");
    seen[t] = true;
  }
  for (int i = 0; i < rank_; ++i) {
    if (star_[star_[i]] != i) throw std::invalid_argument("star is not an involution");
    for (int j = 0; j < rank_; ++j)
      if (m(star_[i], star_[j]) != m(i, j)) throw std::invalid_argument("star does not preserve the Coxeter matrix");
  }
  std::uint64_t h = 0xcbf29ce484222325ull;
  h = fnv1a(h, static_cast<std::uint64_t>(rank_));
  for (int v : matrix_) h = fnv1a(h, static_cast<std::uint64_t>(v));
  for (int v : star_) h = fnv1a(h, static_cast<std::uint64_t>(v));
  id_ = h;
  finite_ = positive_definite_form(rank_, matrix_);
  rep_ = ReflectionRep::build(rank_, matrix_);
}

CoxeterSystem CoxeterSystem::from_label(std::string_view label, std::vector<int> star) {
  auto chain = [](int n, int edge) {
    std::vector<int> m(n * n, 2);
    for (int i = 0; i < n; ++i) m[i * n + i] = 1;
    for (int i = 0; i + 1 < n; ++i) m[i * n + i + 1] = m[(i + 1) * n + i] = edge;
    return m;
  };
  const std::string name(label);
  auto number_after = [&](std::size_t pos) {
    if (pos >= name.size()) throw std::invalid_argument("bad type label: " + name);
    std::size_t used = 0;
    const int n = std::stoi(name.substr(pos), &used);
    if (pos + used != name.size() || n < 1) throw std::invalid_argument("bad type label: " + name);
    return n;
  };
  if (name == "Dinf" || name == "D∞" || name == "Ainf~" || name == "I2(inf)") {
    return CoxeterSystem(2, {1, kInfinity, kInfinity, 1}, std::move(star), "Dinf");
  }
  if (name.rfind("I2(", 0) == 0 && name.back() == ')') {
    const int mm = std::stoi(name.substr(3, name.size() - 4));
    if (mm < 2) throw std::invalid_argument("bad dihedral order: " + name);
    return CoxeterSystem(2, {1, mm, mm, 1}, std::move(star), name);
  }
  if (name.empty()) throw std::invalid_argument("empty type label");
  const char family = name[0];
  const int n = number_after(1);
  std::vector<int> m;
  switch (family) {
    case 'A': m = chain(n, 3); break;
    case 'B':
    case 'C':
      if (n < 2) throw std::invalid_argument("B/C need rank >= 2");
      m = chain(n, 3);
      m[0 * n + 1] = m[1 * n + 0] = 4;
      break;
    case 'D':
      if (n < 4) throw std::invalid_argument("D needs rank >= 4");
      m = chain(n, 3);
      m[(n - 2) * n + (n - 1)] = m[(n - 1) * n + (n - 2)] = 2;
      m[(n - 3) * n + (n - 1)] = m[(n - 1) * n + (n - 3)] = 3;
      break;
    case 'F':
      if (n != 4) throw std::invalid_argument("F needs rank 4");
      m = chain(4, 3);
      m[1 * 4 + 2] = m[2 * 4 + 1] = 4;
      break;
    case 'G':
      if (n != 2) throw std::invalid_argument("G needs rank 2");
      m = chain(2, 6);
      break;
    case 'H':
      if (n != 3 && n != 4) throw std::invalid_argument("H needs rank 3 or 4");
      m = chain(n, 3);
      m[0 * n + 1] = m[1 * n + 0] = 5;
      break;
    default: throw std::invalid_argument("unknown type label: " + name);
  }
  return CoxeterSystem(n, std::move(m), std::move(star), name);
}

CoxeterSystem CoxeterSystem::with_star(std::vector<int> star) const {
  return CoxeterSystem(rank_, matrix_, std::move(star), label_);
}

bool CoxeterSystem::star_is_identity() const {
  for (int i = 0; i < rank_; ++i)
    if (star_[i] != i) return false;
  return true;
}

void CoxeterSystem::require_same(const CoxeterElement& w) const {
  if (w.system_id() != id_) throw std::invalid_argument("element belongs to a different Coxeter system");
}

CoxeterElement CoxeterSystem::generator(int i) const {
  if (i < 0 || i >= rank_) throw std::out_of_range("generator index");
  return {Word{static_cast<Generator>(i)}, id_};
}

CoxeterElement CoxeterSystem::from_word(std::span<const Generator> word) const {
  for (Generator g : word)
    if (g >= rank_) throw std::out_of_range("generator index in word");
  return {normal_form(word), id_};
}

CoxeterElement CoxeterSystem::parse(std::string_view digits) const {
  if (digits == "e" || digits == "∅") return identity();
  Word w;
  for (char c : digits) {
    if (c < '1' || c > '9') throw std::invalid_argument("bad element string: " + std::string(digits));
    w.push_back(static_cast<Generator>(c - '1'));
  }
  return from_word(w);
}

Word CoxeterSystem::normal_form(std::span<const Generator> word) const {
  if (!rep_) return rewrite_normal_form(word);
  // Greedy: the first letter of the ShortLex form of x is its least left
  // descent. N holds the matrix of x^-1; column i of N is x^-1(alpha_i).
  const int n = rank_;
  std::vector<std::int64_t> mat(n * n, 0);
  for (int i = 0; i < n; ++i) mat[i * n + i] = 1;
  for (Generator a : word) {
    // mat <- S_a * mat: only row a changes.
    std::vector<std::int64_t> row(n, 0);
    for (int k = 0; k < n; ++k) {
      const auto c = rep_->cartan(a, k);
      if (c == 0) continue;
      for (int j = 0; j < n; ++j) row[j] += c * mat[k * n + j];
    }
    for (int j = 0; j < n; ++j) mat[a * n + j] -= row[j];
  }
  Word out;
  for (;;) {
    int descent = -1;
    for (int i = 0; i < n && descent < 0; ++i) {
      for (int k = 0; k < n; ++k) {
        if (mat[k * n + i] < 0) {
          descent = i;
          break;
        }
        if (mat[k * n + i] > 0) break;
      }
    }
    if (descent < 0) break;
    out.push_back(static_cast<Generator>(descent));
    // mat <- mat * S_descent: column j gains -a(descent, j) * column descent.
    std::vector<std::int64_t> col(n);
    for (int k = 0; k < n; ++k) col[k] = mat[k * n + descent];
    for (int j = 0; j < n; ++j) {
      const auto c = rep_->cartan(descent, j);
      if (c == 0) continue;
      for (int k = 0; k < n; ++k) mat[k * n + j] -= c * col[k];
    }
  }
  return out;
}

std::vector<Word> CoxeterSystem::braid_class(const Word& word) const {
  std::set<Word> seen{word};
  std::deque<Word> queue{word};
  while (!queue.empty()) {
    Word w = std::move(queue.front());
    queue.pop_front();
    for (std::size_t pos = 0; pos + 1 < w.size(); ++pos) {
      const Generator a = w[pos];
      const Generator b = w[pos + 1];
      if (a == b) continue;
      const int mab = m(a, b);
      if (mab == kInfinity || !is_alternating_prefix(w, pos, a, b, mab)) continue;
      Word next = w;
      for (int k = 0; k < mab; ++k) next[pos + k] = k % 2 == 0 ? b : a;
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return {seen.begin(), seen.end()};
}

Word CoxeterSystem::rewrite_normal_form(std::span<const Generator> word) const {
  Word current(word.begin(), word.end());
  for (;;) {
    auto cls = braid_class(current);
    bool reduced = true;
    for (const Word& w : cls) {
      for (std::size_t pos = 0; pos + 1 < w.size(); ++pos) {
        if (w[pos] == w[pos + 1]) {
          current = w;
          current.erase(current.begin() + static_cast<std::ptrdiff_t>(pos),
                        current.begin() + static_cast<std::ptrdiff_t>(pos) + 2);
          reduced = false;
          break;
        }
      }
      if (!reduced) break;
    }
    if (reduced) return cls.front();  // std::set order is lexicographic
  }
}

std::vector<Word> CoxeterSystem::reduced_words(std::span<const Generator> reduced) const {
  return braid_class(Word(reduced.begin(), reduced.end()));
}

CoxeterElement CoxeterSystem::multiply(const CoxeterElement& a, const CoxeterElement& b) const {
  require_same(a);
  require_same(b);
  Word w = a.word();
  w.insert(w.end(), b.word().begin(), b.word().end());
  return {normal_form(w), id_};
}

CoxeterElement CoxeterSystem::left_multiply(int s, const CoxeterElement& w) const {
  require_same(w);
  Word word{static_cast<Generator>(s)};
  word.insert(word.end(), w.word().begin(), w.word().end());
  return {normal_form(word), id_};
}

CoxeterElement CoxeterSystem::right_multiply(const CoxeterElement& w, int s) const {
  require_same(w);
  Word word = w.word();
  word.push_back(static_cast<Generator>(s));
  return {normal_form(word), id_};
}

CoxeterElement CoxeterSystem::inverse(const CoxeterElement& w) const {
  require_same(w);
  Word word(w.word().rbegin(), w.word().rend());
  return {normal_form(word), id_};
}

CoxeterElement CoxeterSystem::star(const CoxeterElement& w) const {
  require_same(w);
  Word word = w.word();
  for (auto& g : word) g = static_cast<Generator>(star_[g]);
  return {normal_form(word), id_};
}

bool CoxeterSystem::is_left_descent(int s, const CoxeterElement& w) const {
  require_same(w);
  if (rep_) {
    // l(s w) < l(w) iff w^-1(alpha_s) is negative.
    Word inv(w.word().rbegin(), w.word().rend());
    const auto x = rep_->image_of_root(inv, s);
    for (auto c : x) {
      if (c < 0) return true;
      if (c > 0) return false;
    }
    return false;
  }
  return left_multiply(s, w).length() < w.length();
}

bool CoxeterSystem::is_right_descent(const CoxeterElement& w, int s) const {
  require_same(w);
  if (rep_) {
    const auto x = rep_->image_of_root(w.word(), s);
    for (auto c : x) {
      if (c < 0) return true;
      if (c > 0) return false;
    }
    return false;
  }
  return right_multiply(w, s).length() < w.length();
}

std::vector<int> CoxeterSystem::left_descents(const CoxeterElement& w) const {
  std::vector<int> out;
  for (int s = 0; s < rank_; ++s)
    if (is_left_descent(s, w)) out.push_back(s);
  return out;
}

std::vector<int> CoxeterSystem::right_descents(const CoxeterElement& w) const {
  std::vector<int> out;
  for (int s = 0; s < rank_; ++s)
    if (is_right_descent(w, s)) out.push_back(s);
  return out;
}

bool CoxeterSystem::bruhat_leq(const CoxeterElement& y, const CoxeterElement& w) const {
  require_same(y);
  require_same(w);
  // Lifting property along the last letter s of w (ws < w):
  // ys < y: y <= w iff ys <= ws;  ys > y: y <= w iff y <= ws.
  CoxeterElement yy = y;
  Word rest = w.word();
  while (yy.length() <= rest.size()) {
    if (rest.empty()) return yy.is_identity();
    const int s = rest.back();
    rest.pop_back();
    if (is_right_descent(yy, s)) yy = right_multiply(yy, s);
  }
  return false;
}

std::vector<CoxeterElement> CoxeterSystem::enumerate(std::size_t max_len) const {
  std::vector<CoxeterElement> out{identity()};
  std::vector<CoxeterElement> level{identity()};
  for (std::size_t len = 1; len <= max_len && !level.empty(); ++len) {
    std::set<Word> next;
    for (const auto& x : level)
      for (int s = 0; s < rank_; ++s) {
        auto y = left_multiply(s, x);
        if (y.length() > x.length()) next.insert(y.word());
      }
    level.clear();
    for (const auto& w : next) level.push_back(CoxeterElement(w, id_));
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

bool CoxeterSystem::is_twisted_involution(const CoxeterElement& w) const { return star(w) == inverse(w); }

std::vector<CoxeterElement> CoxeterSystem::twisted_involutions(std::size_t max_len) const {
  std::vector<CoxeterElement> out;
  for (auto& w : enumerate(max_len))
    if (is_twisted_involution(w)) out.push_back(std::move(w));
  return out;
}

// ---------------------------------------------------------------------------
// ElementTable

ElementTable::ElementTable(const CoxeterSystem& sys, std::size_t max_len) : sys_(sys), max_len_(max_len) {
  if (!sys_.is_finite() && max_len == std::numeric_limits<std::size_t>::max())
    throw std::invalid_argument("infinite Coxeter group needs a length bound");
  elements_ = sys_.enumerate(max_len);
  std::size_t longest = elements_.back().length();
  complete_ = sys_.is_finite() && (longest < max_len || sys_.enumerate(longest + 1).size() == elements_.size());
  if (complete_) max_len_ = longest;
  for (std::uint32_t i = 0; i < elements_.size(); ++i) index_.emplace(key_of(elements_[i].word()), i);

  const int n = sys_.rank();
  const auto count = elements_.size();
  left_.assign(n, std::vector<std::uint32_t>(count, kOutside));
  right_.assign(n, std::vector<std::uint32_t>(count, kOutside));
  descent_left_.assign(count, 0);
  descent_right_.assign(count, 0);
  inverse_.resize(count);
  star_.resize(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto& x = elements_[i];
    for (int s = 0; s < n; ++s) {
      auto l = sys_.left_multiply(s, x);
      auto r = sys_.right_multiply(x, s);
      if (l.length() < x.length()) descent_left_[i] |= 1u << s;
      if (r.length() < x.length()) descent_right_[i] |= 1u << s;
      if (auto f = find(l)) left_[s][i] = f->value;
      if (auto f = find(r)) right_[s][i] = f->value;
    }
    inverse_[i] = id(sys_.inverse(x)).value;
    star_[i] = id(sys_.star(x)).value;
  }
  bruhat_down_.resize(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    boost::dynamic_bitset<> down(count);
    const auto& w = elements_[i].word();
    if (w.empty()) {
      down.set(0);
    } else {
      // Subword products of w = w' s: down(w) = down(w') u down(w') s.
      Word prefix(w.begin(), w.end() - 1);
      const auto& base = bruhat_down_[index_.at(key_of(prefix))];
      const int s = w.back();
      down = base;
      for (auto y = base.find_first(); y != boost::dynamic_bitset<>::npos; y = base.find_next(y))
        down.set(right_[s][y]);
    }
    bruhat_down_[i] = std::move(down);
  }
}

std::optional<ElementId> ElementTable::find(const CoxeterElement& w) const {
  if (w.system_id() != sys_.content_hash()) throw std::invalid_argument("element belongs to a different Coxeter system");
  auto it = index_.find(key_of(w.word()));
  if (it == index_.end()) return std::nullopt;
  return ElementId{it->second};
}

ElementId ElementTable::id(const CoxeterElement& w) const {
  auto f = find(w);
  if (!f) throw std::out_of_range("element " + w.to_string() + " lies outside the enumerated window");
  return *f;
}

ElementId ElementTable::left_in(int s, ElementId x) const {
  const auto r = left_[s][x.value];
  if (r == kOutside) throw std::out_of_range("left multiplication leaves the enumerated window");
  return ElementId{r};
}

ElementId ElementTable::right_in(ElementId x, int s) const {
  const auto r = right_[s][x.value];
  if (r == kOutside) throw std::out_of_range("right multiplication leaves the enumerated window");
  return ElementId{r};
}

ElementId ElementTable::multiply(ElementId x, ElementId y) const {
  ElementId out = x;
  for (Generator g : elements_[y.value].word()) out = right_in(out, g);
  return out;
}

std::vector<ElementId> ElementTable::ids() const {
  std::vector<ElementId> out(elements_.size());
  for (std::uint32_t i = 0; i < out.size(); ++i) out[i] = ElementId{i};
  return out;
}

}  // namespace hinv::coxeter

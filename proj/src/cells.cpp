#include "hinv/cells.hpp"

#include <algorithm>
#include <set>

#include "hinv/parallel.hpp"

namespace hinv::cells {

namespace {

void transitive_closure(std::vector<boost::dynamic_bitset<>>& down) {
  const std::size_t n = down.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t w = 0; w < n; ++w)
      if (down[w].test(k)) down[w] |= down[k];
}

// Classes of the symmetrized preorder, each sorted, ordered by least member.
std::vector<std::vector<ElementId>> classes(const std::vector<boost::dynamic_bitset<>>& down, std::vector<int>& of) {
  const std::size_t n = down.size();
  of.assign(n, -1);
  std::vector<std::vector<ElementId>> out;
  for (std::size_t w = 0; w < n; ++w) {
    if (of[w] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    for (std::size_t z = w; z < n; ++z)
      if (of[z] < 0 && down[w].test(z) && down[z].test(w)) {
        of[z] = id;
        out.back().push_back(ElementId{static_cast<std::uint32_t>(z)});
      }
  }
  return out;
}

void add_to(JElement& j, ElementId x, std::int64_t c) {
  if (c == 0) return;
  auto [it, inserted] = j.emplace(x, c);
  if (!inserted) {
    it->second = detail::add(it->second, c);
    if (it->second == 0) j.erase(it);
  }
}

}  // namespace

CellData::CellData(std::shared_ptr<const HeckeAlgebra> H, int jobs) : H_(std::move(H)) {
  const auto& t = H_->table();
  if (!t.complete()) throw std::invalid_argument("cells need a finite Coxeter group");
  const std::size_t n = t.size();
  parallel_for(n * n, jobs, [&](std::size_t k) {
    (void)H_->h_struct(ElementId{static_cast<std::uint32_t>(k / n)}, ElementId{static_cast<std::uint32_t>(k % n)});
  });

  leq_L_.assign(n, boost::dynamic_bitset<>(n));
  leq_R_.assign(n, boost::dynamic_bitset<>(n));
  for (std::uint32_t w = 0; w < n; ++w) {
    leq_L_[w].set(w);
    leq_R_[w].set(w);
    for (std::uint32_t x = 0; x < n; ++x) {
      for (const auto& [z, c] : H_->h_struct(ElementId{x}, ElementId{w})) leq_L_[w].set(z.value);
      for (const auto& [z, c] : H_->h_struct(ElementId{w}, ElementId{x})) leq_R_[w].set(z.value);
    }
  }
  leq_LR_.resize(n);
  for (std::size_t w = 0; w < n; ++w) leq_LR_[w] = leq_L_[w] | leq_R_[w];
  transitive_closure(leq_L_);
  transitive_closure(leq_R_);
  transitive_closure(leq_LR_);

  cells_.two_sided = classes(leq_LR_, cells_.two_sided_of);
  cells_.left = classes(leq_L_, cells_.left_of);
  cells_.right = classes(leq_R_, cells_.right_of);
  const std::size_t nc = cells_.two_sided.size();
  cells_.order.assign(nc, std::vector<bool>(nc, false));
  for (std::size_t c = 0; c < nc; ++c)
    for (std::size_t d = 0; d < nc; ++d)
      cells_.order[c][d] = leq_LR(cells_.two_sided[c].front(), cells_.two_sided[d].front());

  a_.assign(n, std::numeric_limits<int>::min());
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y)
      for (const auto& [z, c] : H_->h_struct(ElementId{x}, ElementId{y}))
        a_[z.value] = std::max(a_[z.value], c.max_degree());

  is_distinguished_.assign(n, false);
  for (std::uint32_t z = 0; z < n; ++z) {
    const ElementId zid{z};
    const int deg = H_->kl_poly(t.identity(), zid).max_degree() / 2;
    if (a_[z] == static_cast<int>(t.length(zid)) - 2 * deg) {
      is_distinguished_[z] = true;
      distinguished_.push_back(zid);
    }
  }

  j_products_.resize(n * n);
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y) {
      JElement& j = j_products_[x * n + y];
      for (const auto& [z, c] : H_->h_struct(ElementId{x}, ElementId{y})) add_to(j, z, c.coeff(a_[z.value]));
    }
}

std::int64_t CellData::gamma(ElementId x, ElementId y, ElementId z) const {
  const ElementId zi = table().inverse(z);
  return H_->h_dot(x, y, zi).coeff(a(zi));
}

JElement CellData::j_mult(const JElement& a, const JElement& b) const {
  JElement out;
  for (const auto& [x, cx] : a)
    for (const auto& [y, cy] : b)
      for (const auto& [z, g] : j_basis_product(x, y)) add_to(out, z, detail::mul(detail::mul(cx, cy), g));
  return out;
}

JElement CellData::j_unit() const {
  JElement out;
  for (auto d : distinguished_) out[d] = 1;
  return out;
}

bool CellData::closed_and_unital(JBlock& block) const {
  const std::set<ElementId> span(block.basis.begin(), block.basis.end());
  block.closed = true;
  block.unit_ok = true;
  for (auto x : block.basis) {
    for (auto y : block.basis)
      for (const auto& [z, g] : j_basis_product(x, y))
        if (!span.count(z)) block.closed = false;
    const JElement tx{{x, 1}};
    if (j_mult(block.unit, tx) != tx || j_mult(tx, block.unit) != tx) block.unit_ok = false;
  }
  return block.closed && block.unit_ok;
}

std::vector<JBlock> CellData::two_sided_blocks() const {
  std::vector<JBlock> out;
  for (const auto& cell : cells_.two_sided) {
    JBlock b;
    b.basis = cell;
    for (auto z : cell)
      if (is_distinguished(z)) b.unit[z] = 1;
    closed_and_unital(b);
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<LeftCellBlock> CellData::left_cell_blocks() const {
  const auto& t = table();
  std::vector<LeftCellBlock> out;
  for (std::size_t k = 0; k < cells_.left.size(); ++k) {
    const auto& lambda = cells_.left[k];
    LeftCellBlock b;
    b.left_cell = static_cast<int>(k);
    const std::set<ElementId> members(lambda.begin(), lambda.end());
    b.star_stable = true;
    for (auto x : lambda) {
      if (members.count(t.inverse(x))) b.basis.push_back(x);
      if (!members.count(t.star(x))) b.star_stable = false;
      if (is_distinguished(x)) {
        b.distinguished = x;
        b.unit[x] = 1;
      }
    }
    closed_and_unital(b);
    out.push_back(std::move(b));
  }
  return out;
}

nlohmann::json j_to_json(const coxeter::ElementTable& t, const JElement& j) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [z, c] : j) out.push_back({{"w", t.element(z).to_string()}, {"c", c}});
  return out;
}

nlohmann::json CellData::to_json() const {
  const auto& t = table();
  auto words = [&](const std::vector<ElementId>& ids) {
    nlohmann::json a = nlohmann::json::array();
    for (auto x : ids) a.push_back(t.element(x).to_string());
    return a;
  };
  nlohmann::json two = nlohmann::json::array(), left = nlohmann::json::array(), right = nlohmann::json::array();
  for (const auto& c : cells_.two_sided) two.push_back(words(c));
  for (const auto& c : cells_.left) left.push_back(words(c));
  for (const auto& c : cells_.right) right.push_back(words(c));
  nlohmann::json order = nlohmann::json::array();
  for (std::size_t c = 0; c < cells_.two_sided.size(); ++c)
    for (std::size_t d = 0; d < cells_.two_sided.size(); ++d)
      if (c != d && cells_.order[c][d]) order.push_back({c, d});
  nlohmann::json avals = nlohmann::json::object();
  for (auto x : t.ids()) avals[t.element(x).to_string()] = a(x);
  nlohmann::json jrows = nlohmann::json::array();
  for (auto x : t.ids())
    for (auto y : t.ids()) {
      const auto& p = j_basis_product(x, y);
      if (p.empty()) continue;
      jrows.push_back({{"x", t.element(x).to_string()}, {"y", t.element(y).to_string()}, {"product", j_to_json(t, p)}});
    }
  return {{"two_sided_cells", two},
          {"left_cells", left},
          {"right_cells", right},
          {"cell_order", order},
          {"a", avals},
          {"distinguished", words(distinguished_)},
          {"j_products", jrows}};
}

}  // namespace hinv::cells

#include "hinv/eqvb.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace hinv::eqvb {

namespace {

using nlohmann::json;

Mat identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat mul(const Mat& a, const Mat& b) {
  if (a.cols != b.rows) throw std::logic_error("matrix shape mismatch");
  Mat c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const auto x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat c(a.rows * b.rows, a.cols * b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j)
      for (std::size_t k = 0; k < b.rows; ++k)
        for (std::size_t l = 0; l < b.cols; ++l) c(i * b.rows + k, j * b.cols + l) = a(i, j) * b(k, l);
  return c;
}

Mat transpose(const Mat& a) {
  Mat t(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
  return t;
}

std::int64_t trace(const Mat& a) {
  std::int64_t t = 0;
  for (std::size_t i = 0; i < std::min(a.rows, a.cols); ++i) t += a(i, i);
  return t;
}

void place(Mat& dst, std::size_t r0, std::size_t c0, const Mat& block) {
  for (std::size_t i = 0; i < block.rows; ++i)
    for (std::size_t j = 0; j < block.cols; ++j) dst(r0 + i, c0 + j) = block(i, j);
}

// Subgroup generated by gens, ascending.
std::vector<Elem> span(const std::vector<Elem>& gens) {
  std::set<Elem> h{0};
  for (Elem g : gens) {
    std::set<Elem> next = h;
    for (Elem x : h) next.insert(x ^ g);
    h = std::move(next);
  }
  return {h.begin(), h.end()};
}

// Orbits of Gamma on {0..n-1} under act(g, q), ordered by least point.
std::vector<Orbit> orbits(std::size_t n, Elem order, const std::function<std::uint32_t(Elem, std::uint32_t)>& act) {
  std::vector<Orbit> out;
  std::vector<bool> seen(n, false);
  for (std::uint32_t p = 0; p < n; ++p) {
    if (seen[p]) continue;
    Orbit o;
    for (Elem g = 0; g < order; ++g) {
      const auto q = act(g, p);
      o.rep.emplace(q, g);  // g ascending, so the first is the least
      if (q == p) o.stabilizer.push_back(g);
      seen[q] = true;
    }
    for (const auto& [q, g] : o.rep) o.points.push_back(q);
    std::map<std::vector<int>, Elem> chars;
    for (Elem a = 0; a < order; ++a) {
      std::vector<int> sig;
      for (Elem h : o.stabilizer) sig.push_back(chi(a, h));
      chars.emplace(sig, a);
    }
    for (const auto& [sig, a] : chars) o.characters.push_back(a);
    std::sort(o.characters.begin(), o.characters.end());
    out.push_back(std::move(o));
  }
  return out;
}

void add_to(BundleClass& c, int i, std::int64_t m) {
  if (m == 0) return;
  auto [it, inserted] = c.emplace(i, m);
  if (!inserted) {
    it->second += m;
    if (it->second == 0) c.erase(it);
  }
}

Bundle empty_bundle(std::size_t points, Elem order) {
  Bundle b;
  b.dim.assign(points, 0);
  b.tau.assign(order, std::vector<Mat>(points));
  return b;
}

}  // namespace

GammaSet::GammaSet(int rank, std::vector<std::vector<std::uint32_t>> act)
    : rank_(rank), n_(act.empty() ? 0 : act[0].size()), act_(std::move(act)) {
  if (rank < 0 || rank > 16) throw std::invalid_argument("rank of Gamma out of range");
  if (act_.size() != order()) throw std::invalid_argument("action table needs one row per group element");
  for (Elem g = 0; g < order(); ++g) {
    if (act_[g].size() != n_) throw std::invalid_argument("action rows of unequal length");
    for (std::uint32_t x = 0; x < n_; ++x) {
      if (act_[g][x] >= n_) throw std::invalid_argument("action leaves X");
      if (g == 0 && act_[g][x] != x) throw std::invalid_argument("identity acts nontrivially");
      for (Elem h = 0; h < order(); ++h)
        if (act_[g ^ h][x] != act_[g][act_[h][x]]) throw std::invalid_argument("not an action of F_2^r");
    }
  }
}

GammaSet GammaSet::from_generators(int rank, std::size_t points, const std::vector<std::vector<std::uint32_t>>& gens) {
  if (static_cast<int>(gens.size()) != rank) throw std::invalid_argument("one permutation per generator");
  const Elem order = Elem{1} << rank;
  std::vector<std::vector<std::uint32_t>> act(order, std::vector<std::uint32_t>(points));
  for (Elem g = 0; g < order; ++g)
    for (std::uint32_t x = 0; x < points; ++x) {
      std::uint32_t y = x;
      for (int i = 0; i < rank; ++i)
        if (g >> i & 1u) {
          if (gens[i].size() != points) throw std::invalid_argument("permutation of wrong size");
          y = gens[i][y];
        }
      act[g][x] = y;
    }
  return GammaSet(rank, std::move(act));
}

GammaSet GammaSet::from_cosets(int rank, const std::vector<std::vector<Elem>>& subgroup_generators) {
  const Elem order = Elem{1} << rank;
  // points: (block k, coset representative), cosets named by their least element
  std::vector<std::vector<Elem>> cosets;  // per block, sorted least reps
  std::vector<std::vector<Elem>> subgroups;
  for (const auto& gens : subgroup_generators) {
    for (Elem g : gens)
      if (g >= order) throw std::invalid_argument("subgroup generator outside Gamma");
    const auto H = span(gens);
    std::set<Elem> reps;
    for (Elem g = 0; g < order; ++g) {
      Elem least = g;
      for (Elem h : H) least = std::min(least, g ^ h);
      reps.insert(least);
    }
    cosets.emplace_back(reps.begin(), reps.end());
    subgroups.push_back(H);
  }
  std::vector<std::uint32_t> offset;
  std::size_t n = 0;
  for (const auto& c : cosets) {
    offset.push_back(static_cast<std::uint32_t>(n));
    n += c.size();
  }
  std::vector<std::vector<std::uint32_t>> act(order, std::vector<std::uint32_t>(n));
  for (std::size_t k = 0; k < cosets.size(); ++k)
    for (std::size_t i = 0; i < cosets[k].size(); ++i)
      for (Elem g = 0; g < order; ++g) {
        Elem least = g ^ cosets[k][i];
        for (Elem h : subgroups[k]) least = std::min(least, (g ^ cosets[k][i]) ^ h);
        const auto pos = std::lower_bound(cosets[k].begin(), cosets[k].end(), least) - cosets[k].begin();
        act[g][offset[k] + i] = offset[k] + static_cast<std::uint32_t>(pos);
      }
  return GammaSet(rank, std::move(act));
}

json GammaSet::to_json() const { return {{"rank", rank_}, {"points", n_}, {"action", act_}}; }

Structure::Structure(GammaSet X) : X_(std::move(X)) {
  const std::size_t n = X_.size();
  const Elem order = X_.order();
  x_orbits_ = orbits(n, order, [&](Elem g, std::uint32_t x) { return X_.act(g, x); });
  pair_orbits_ = orbits(n * n, order, [&](Elem g, std::uint32_t q) { return pair_act(g, q); });
  orbit_of_pair_.assign(n * n, -1);
  for (std::size_t o = 0; o < pair_orbits_.size(); ++o)
    for (auto q : pair_orbits_[o].points) orbit_of_pair_[q] = static_cast<int>(o);
  for (std::size_t o = 0; o < pair_orbits_.size(); ++o) sigma_orbit_.push_back(orbit_of_pair_[swap(pair_orbits_[o].points.front())]);
  for (std::size_t o = 0; o < pair_orbits_.size(); ++o)
    for (Elem a : pair_orbits_[o].characters) {
      const int idx = static_cast<int>(indec_.size());
      indec_.push_back({static_cast<int>(o), a});
      if (sigma_orbit_[o] == static_cast<int>(o)) self_dual_.push_back(idx);
    }

  const std::size_t m = indec_.size();
  products_.assign(m, std::vector<BundleClass>(m));
  std::vector<Bundle> basis;
  for (std::size_t i = 0; i < m; ++i) basis.push_back(realize(BundleClass{{static_cast<int>(i), 1}}));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) products_[i][j] = decompose(convolve(basis[i], basis[j]));
  circ_.assign(m, std::vector<SignedClass>(m));
  for (int j : self_dual_) {
    const Object u = realize_signed(SignedClass{{j, 1}});
    for (std::size_t i = 0; i < m; ++i) circ_[i][j] = decompose(circ(basis[i], u));
  }
}

std::uint32_t Structure::pair_act(Elem g, std::uint32_t q) const {
  const auto n = static_cast<std::uint32_t>(X_.size());
  return X_.act(g, q / n) * n + X_.act(g, q % n);
}

std::uint32_t Structure::swap(std::uint32_t q) const {
  const auto n = static_cast<std::uint32_t>(X_.size());
  return (q % n) * n + q / n;
}

int Structure::index_of(int orbit, Elem character) const {
  for (std::size_t i = 0; i < indec_.size(); ++i)
    if (indec_[i].orbit == orbit && indec_[i].character == character) return static_cast<int>(i);
  throw std::invalid_argument("no such indecomposable");
}

BundleClass Structure::unit() const {
  BundleClass out;
  const auto n = static_cast<std::uint32_t>(X_.size());
  std::set<int> diag;
  for (std::uint32_t x = 0; x < n; ++x) diag.insert(orbit_of_pair_[x * n + x]);
  // C_Delta on a diagonal orbit is the trivial character of its stabilizer
  for (int o : diag) out[index_of(o, pair_orbits_[o].characters.front())] = 1;
  return out;
}

Bundle Structure::realize(const BundleClass& v) const {
  const std::size_t N = X_.size() * X_.size();
  const Elem order = X_.order();
  Bundle b = empty_bundle(N, order);
  // block layout: for each point, the copies in class order
  std::vector<std::vector<std::pair<int, std::size_t>>> layout(N);  // (indecomposable, offset)
  for (const auto& [i, mult] : v) {
    if (i < 0 || static_cast<std::size_t>(i) >= indec_.size()) throw std::invalid_argument("no such indecomposable");
    if (mult < 0) throw std::invalid_argument("cannot realize a negative multiplicity");
    const auto& o = pair_orbits_[indec_[i].orbit];
    for (auto q : o.points)
      for (std::int64_t c = 0; c < mult; ++c) {
        layout[q].push_back({i, b.dim[q]});
        ++b.dim[q];
      }
  }
  for (Elem g = 0; g < order; ++g)
    for (std::uint32_t q = 0; q < N; ++q) {
      const auto gq = pair_act(g, q);
      Mat t(b.dim[gq], b.dim[q]);
      // the k-th copy of indecomposable i at q maps to the k-th copy at gq
      for (std::size_t k = 0; k < layout[q].size(); ++k) {
        const auto [i, col] = layout[q][k];
        const auto row = layout[gq][k].second;
        const auto& o = pair_orbits_[indec_[i].orbit];
        t(row, col) = chi(indec_[i].character, g ^ o.rep.at(q) ^ o.rep.at(gq));
      }
      b.tau[g][q] = std::move(t);
    }
  return b;
}

Object Structure::realize_signed(const SignedClass& u) const {
  BundleClass abs;
  for (const auto& [i, c] : u) {
    if (i < 0 || static_cast<std::size_t>(i) >= indec_.size()) throw std::invalid_argument("no such indecomposable");
    if (sigma_orbit_[indec_[i].orbit] != indec_[i].orbit) throw std::invalid_argument("not a self-dual indecomposable");
    abs[i] = c < 0 ? -c : c;
  }
  Object obj;
  obj.U = realize(abs);
  const std::size_t N = X_.size() * X_.size();
  obj.kappa.resize(N);
  for (std::uint32_t q = 0; q < N; ++q) {
    const auto sq = swap(q);
    Mat k(obj.U.dim[sq], obj.U.dim[q]);
    std::size_t pos = 0;
    for (const auto& [i, c] : u) {
      const auto& o = pair_orbits_[indec_[i].orbit];
      if (!o.rep.count(q)) continue;
      const Elem g0 = o.rep.at(swap(o.points.front()));
      // canonical kappa: tau_{g0} kappa = +1 at the base point
      const int val = chi(indec_[i].character, o.rep.at(q) ^ g0 ^ o.rep.at(sq)) * (c < 0 ? -1 : 1);
      for (std::int64_t r = 0; r < (c < 0 ? -c : c); ++r, ++pos) k(pos, pos) = val;
    }
    obj.kappa[q] = std::move(k);
  }
  return obj;
}

Bundle Structure::convolve(const Bundle& a, const Bundle& b) const {
  const auto n = static_cast<std::uint32_t>(X_.size());
  const Elem order = X_.order();
  Bundle c = empty_bundle(n * n, order);
  // offsets[x*n+y][z] of the z summand
  std::vector<std::vector<std::size_t>> off(n * n, std::vector<std::size_t>(n));
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y) {
      std::size_t d = 0;
      for (std::uint32_t z = 0; z < n; ++z) {
        off[x * n + y][z] = d;
        d += a.dim[x * n + z] * b.dim[z * n + y];
      }
      c.dim[x * n + y] = d;
    }
  for (Elem g = 0; g < order; ++g)
    for (std::uint32_t x = 0; x < n; ++x)
      for (std::uint32_t y = 0; y < n; ++y) {
        const std::uint32_t q = x * n + y, gx = X_.act(g, x), gy = X_.act(g, y), gq = gx * n + gy;
        Mat t(c.dim[gq], c.dim[q]);
        for (std::uint32_t z = 0; z < n; ++z) {
          const std::uint32_t gz = X_.act(g, z);
          place(t, off[gq][gz], off[q][z], kron(a.tau[g][x * n + z], b.tau[g][z * n + y]));
        }
        c.tau[g][q] = std::move(t);
      }
  return c;
}

Bundle Structure::sigma(const Bundle& v) const {
  const std::size_t N = X_.size() * X_.size();
  Bundle s = empty_bundle(N, X_.order());
  for (std::uint32_t q = 0; q < N; ++q) s.dim[q] = v.dim[swap(q)];
  for (Elem g = 0; g < X_.order(); ++g)
    for (std::uint32_t q = 0; q < N; ++q) s.tau[g][q] = v.tau[g][swap(q)];
  return s;
}

Bundle Structure::dual(const Bundle& v) const {
  const std::size_t N = X_.size() * X_.size();
  Bundle d = empty_bundle(N, X_.order());
  d.dim = v.dim;
  // tau^dual_g on V_q^* is the transpose of tau_{g^-1} = tau_g : V_{gq} -> V_q
  for (Elem g = 0; g < X_.order(); ++g)
    for (std::uint32_t q = 0; q < N; ++q) d.tau[g][q] = transpose(v.tau[g][pair_act(g, q)]);
  return d;
}

Bundle Structure::direct_sum(const Bundle& a, const Bundle& b) const {
  const std::size_t N = X_.size() * X_.size();
  Bundle s = empty_bundle(N, X_.order());
  for (std::uint32_t q = 0; q < N; ++q) s.dim[q] = a.dim[q] + b.dim[q];
  for (Elem g = 0; g < X_.order(); ++g)
    for (std::uint32_t q = 0; q < N; ++q) {
      const auto gq = pair_act(g, q);
      Mat t(s.dim[gq], s.dim[q]);
      place(t, 0, 0, a.tau[g][q]);
      place(t, a.dim[gq], a.dim[q], b.tau[g][q]);
      s.tau[g][q] = std::move(t);
    }
  return s;
}

Object Structure::circ(const Bundle& v, const Object& u) const {
  const auto n = static_cast<std::uint32_t>(X_.size());
  const Elem order = X_.order();
  const Bundle& U = u.U;
  Object out;
  out.U = empty_bundle(n * n, order);
  auto& W = out.U;
  // W_{x,y} = sum over (z, z') of V_{x,z} (x) U_{z,z'} (x) V_{y,z'}
  std::vector<std::vector<std::size_t>> off(n * n, std::vector<std::size_t>(n * n));
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y) {
      std::size_t d = 0;
      for (std::uint32_t z = 0; z < n; ++z)
        for (std::uint32_t zz = 0; zz < n; ++zz) {
          off[x * n + y][z * n + zz] = d;
          d += v.dim[x * n + z] * U.dim[z * n + zz] * v.dim[y * n + zz];
        }
      W.dim[x * n + y] = d;
    }
  for (Elem g = 0; g < order; ++g)
    for (std::uint32_t x = 0; x < n; ++x)
      for (std::uint32_t y = 0; y < n; ++y) {
        const std::uint32_t q = x * n + y, gq = X_.act(g, x) * n + X_.act(g, y);
        Mat t(W.dim[gq], W.dim[q]);
        for (std::uint32_t z = 0; z < n; ++z)
          for (std::uint32_t zz = 0; zz < n; ++zz) {
            const std::uint32_t gz = X_.act(g, z), gzz = X_.act(g, zz);
            const Mat blk = kron(kron(v.tau[g][x * n + z], U.tau[g][z * n + zz]), v.tau[g][y * n + zz]);
            place(t, off[gq][gz * n + gzz], off[q][z * n + zz], blk);
          }
        W.tau[g][q] = std::move(t);
      }
  // kappa': a (x) b (x) c in the (z, z') summand -> c (x) kappa(b) (x) a in the (z', z) summand of W_{y,x}
  out.kappa.resize(n * n);
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y) {
      const std::uint32_t q = x * n + y, sq = y * n + x;
      Mat k(W.dim[sq], W.dim[q]);
      for (std::uint32_t z = 0; z < n; ++z)
        for (std::uint32_t zz = 0; zz < n; ++zz) {
          const std::size_t da = v.dim[x * n + z], db = U.dim[z * n + zz], dc = v.dim[y * n + zz];
          const std::size_t db2 = U.dim[zz * n + z];
          const Mat& kap = u.kappa[z * n + zz];  // U_{z,z'} -> U_{z',z}
          for (std::size_t i = 0; i < da; ++i)
            for (std::size_t j = 0; j < db; ++j)
              for (std::size_t l = 0; l < dc; ++l) {
                const std::size_t col = off[q][z * n + zz] + (i * db + j) * dc + l;
                for (std::size_t j2 = 0; j2 < db2; ++j2) {
                  const auto c = kap(j2, j);
                  if (c == 0) continue;
                  // target summand (z', z): V_{y,z'} (x) U_{z',z} (x) V_{x,z}
                  const std::size_t row = off[sq][zz * n + z] + (l * db2 + j2) * da + i;
                  k(row, col) += c;
                }
              }
        }
      out.kappa[q] = std::move(k);
    }
  return out;
}

Object Structure::theta(const Bundle& v) const {
  const std::size_t N = X_.size() * X_.size();
  Object out;
  out.U = direct_sum(v, sigma(v));
  out.kappa.resize(N);
  for (std::uint32_t q = 0; q < N; ++q) {
    const auto sq = swap(q);
    // U_q = V_q + V_{sq}; U_{sq} = V_{sq} + V_q; swap the summands
    Mat k(out.U.dim[sq], out.U.dim[q]);
    const std::size_t a = v.dim[q], b = v.dim[sq];
    for (std::size_t i = 0; i < a; ++i) k(b + i, i) = 1;
    for (std::size_t j = 0; j < b; ++j) k(j, a + j) = 1;
    out.kappa[q] = std::move(k);
  }
  return out;
}

BundleClass Structure::decompose(const Bundle& v) const {
  BundleClass out;
  for (std::size_t o = 0; o < pair_orbits_.size(); ++o) {
    const auto& orb = pair_orbits_[o];
    const auto p = orb.points.front();
    std::int64_t total = 0;
    for (Elem a : orb.characters) {
      std::int64_t s = 0;
      for (Elem h : orb.stabilizer) s += chi(a, h) * trace(v.tau[h][p]);
      const auto H = static_cast<std::int64_t>(orb.stabilizer.size());
      if (s % H != 0) throw std::logic_error("character multiplicity is not integral");
      add_to(out, index_of(static_cast<int>(o), a), s / H);
      total += s / H;
    }
    if (total != static_cast<std::int64_t>(v.dim[p])) throw std::logic_error("fiber not exhausted by characters");
  }
  return out;
}

SignedClass Structure::decompose(const Object& u) const {
  SignedClass out;
  for (std::size_t o = 0; o < pair_orbits_.size(); ++o) {
    if (sigma_orbit_[o] != static_cast<int>(o)) continue;
    const auto& orb = pair_orbits_[o];
    const auto p = orb.points.front();
    const auto sp = swap(p);
    const Elem g0 = orb.rep.at(sp);
    // phi = tau_{g0} kappa_p on U_p, an involution commuting with the stabilizer
    const Mat phi = mul(u.U.tau[g0][sp], u.kappa[p]);
    for (Elem a : orb.characters) {
      std::int64_t s = 0;
      for (Elem h : orb.stabilizer) s += chi(a, h) * trace(mul(u.U.tau[h][p], phi));
      const auto H = static_cast<std::int64_t>(orb.stabilizer.size());
      if (s % H != 0) throw std::logic_error("signed multiplicity is not integral");
      add_to(out, index_of(static_cast<int>(o), a), s / H);
    }
  }
  return out;
}

Bundle Structure::psi(const GammaBundle& y) const {
  const auto n = static_cast<std::uint32_t>(X_.size());
  const Elem order = X_.order();
  if (y.fibers.size() != order) throw std::invalid_argument("bundle on Gamma of wrong size");
  // Psi(Y)_{x,y} = sum over g with x = g y of Y_g; Y_g is a sum of characters, listed in (g, a) order
  Bundle b = empty_bundle(n * n, order);
  std::vector<std::vector<std::pair<Elem, std::size_t>>> chars(n * n);  // per point: character of each basis vector
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t yy = 0; yy < n; ++yy) {
      const auto q = x * n + yy;
      for (Elem g = 0; g < order; ++g) {
        if (X_.act(g, yy) != x) continue;
        for (const auto& [a, m] : y.fibers[g]) {
          if (m < 0) throw std::invalid_argument("negative multiplicity");
          for (std::int64_t k = 0; k < m; ++k) chars[q].push_back({a, g});
        }
      }
      b.dim[q] = chars[q].size();
    }
  for (Elem k = 0; k < order; ++k)
    for (std::uint32_t q = 0; q < n * n; ++q) {
      const auto kq = pair_act(k, q);
      Mat t(b.dim[kq], b.dim[q]);
      // the basis vectors at q and kq are listed by (g, a) in the same order
      for (std::size_t i = 0; i < chars[q].size(); ++i) t(i, i) = chi(chars[q][i].first, k);
      b.tau[k][q] = std::move(t);
    }
  return b;
}

bool Structure::is_sigma_structure(const Object& u) const {
  const std::size_t N = X_.size() * X_.size();
  auto eq = [](const Mat& a, const Mat& b) { return a.rows == b.rows && a.cols == b.cols && a.a == b.a; };
  for (std::uint32_t q = 0; q < N; ++q) {
    const auto sq = swap(q);
    if (!eq(mul(u.kappa[sq], u.kappa[q]), identity(u.U.dim[q]))) return false;
    for (Elem g = 0; g < X_.order(); ++g)
      if (!eq(mul(u.U.tau[g][sq], u.kappa[q]), mul(u.kappa[pair_act(g, q)], u.U.tau[g][q]))) return false;
  }
  return true;
}

BundleClass Structure::convolve(const BundleClass& a, const BundleClass& b) const {
  BundleClass out;
  for (const auto& [i, ci] : a)
    for (const auto& [j, cj] : b)
      for (const auto& [k, ck] : products_[i][j]) add_to(out, k, ci * cj * ck);
  return out;
}

std::int64_t Structure::convolve_formula(int i, int j, int k) const {
  // multiplicity of (O_k, chi_k) in V_i * V_j at the base point (x, y) of O_k:
  // |H|^-1 sum_{h in H} chi_k(h) sum_{z : hz = z} chi_i(h) chi_j(h) [(x,z) in O_i, (z,y) in O_j]
  const auto n = static_cast<std::uint32_t>(X_.size());
  const auto& ok = pair_orbits_[indec_[k].orbit];
  const auto p = ok.points.front();
  const std::uint32_t x = p / n, y = p % n;
  std::int64_t s = 0;
  for (Elem h : ok.stabilizer)
    for (std::uint32_t z = 0; z < n; ++z) {
      if (X_.act(h, z) != z) continue;
      if (orbit_of_pair_[x * n + z] != indec_[i].orbit || orbit_of_pair_[z * n + y] != indec_[j].orbit) continue;
      s += chi(indec_[k].character, h) * chi(indec_[i].character, h) * chi(indec_[j].character, h);
    }
  const auto H = static_cast<std::int64_t>(ok.stabilizer.size());
  if (s % H != 0) throw std::logic_error("formula multiplicity is not integral");
  return s / H;
}

BundleClass Structure::sigma(const BundleClass& v) const {
  BundleClass out;
  for (const auto& [i, c] : v) add_to(out, index_of(sigma_orbit_[indec_[i].orbit], indec_[i].character), c);
  return out;
}

SignedClass Structure::circ(const BundleClass& v, const SignedClass& u) const {
  SignedClass out;
  for (const auto& [i, ci] : v)
    for (const auto& [j, cj] : u)
      for (const auto& [k, ck] : circ_[i][j]) add_to(out, k, ci * cj * ck);
  return out;
}

json class_to_json(const Structure& S, const BundleClass& v) {
  json out = json::array();
  const auto n = static_cast<std::uint32_t>(S.gamma_set().size());
  for (const auto& [i, c] : v) {
    const auto& d = S.indecomposables()[i];
    const auto p = S.pair_orbits()[d.orbit].points.front();
    out.push_back({{"index", i}, {"base", {p / n, p % n}}, {"character", d.character}, {"multiplicity", c}});
  }
  return out;
}

json Structure::to_json() const {
  const auto n = static_cast<std::uint32_t>(X_.size());
  json ind = json::array();
  for (std::size_t i = 0; i < indec_.size(); ++i) {
    const auto& o = pair_orbits_[indec_[i].orbit];
    const auto p = o.points.front();
    ind.push_back({{"index", i},
                   {"orbit", indec_[i].orbit},
                   {"base", {p / n, p % n}},
                   {"orbit_size", o.points.size()},
                   {"stabilizer", o.stabilizer},
                   {"character", indec_[i].character},
                   {"self_dual", sigma_orbit_[indec_[i].orbit] == indec_[i].orbit}});
  }
  json prods = json::array();
  for (std::size_t i = 0; i < indec_.size(); ++i)
    for (std::size_t j = 0; j < indec_.size(); ++j)
      if (!products_[i][j].empty()) prods.push_back({{"i", i}, {"j", j}, {"product", class_to_json(*this, products_[i][j])}});
  return {{"gamma_set", X_.to_json()},
          {"x_orbits", x_orbits_.size()},
          {"indecomposables", ind},
          {"kbar_rank", self_dual_.size()},
          {"products", prods}};
}

GammaBundle gamma_unit(int rank) { return gamma_simple(rank, 0, 0); }

GammaBundle gamma_simple(int rank, Elem g, Elem a) {
  GammaBundle y;
  y.fibers.resize(Elem{1} << rank);
  y.fibers.at(g)[a] = 1;
  return y;
}

GammaBundle convolve(const GammaBundle& a, const GammaBundle& b) {
  GammaBundle out;
  out.fibers.resize(a.fibers.size());
  for (Elem g1 = 0; g1 < a.fibers.size(); ++g1)
    for (Elem g2 = 0; g2 < b.fibers.size(); ++g2)
      for (const auto& [c1, m1] : a.fibers[g1])
        for (const auto& [c2, m2] : b.fibers[g2]) out.fibers[g1 ^ g2][c1 ^ c2] += m1 * m2;
  return out;
}

std::int64_t nu(const GammaBundle& y) {
  std::int64_t s = 0;
  for (const auto& f : y.fibers)
    for (const auto& [a, m] : f) s += m;
  return s;
}

Report verify_structure(const Structure& S) {
  const auto& ind = S.indecomposables();
  const int m = static_cast<int>(ind.size());
  const int rank = S.gamma_set().rank();
  Report rep("eqvb-structure", "Gamma rank " + std::to_string(rank) + ", |X| = " + std::to_string(S.gamma_set().size()));
  auto basis = [](int i) { return BundleClass{{i, 1}}; };
  const BundleClass one = S.unit();

  auto& formula = rep.add("convolution-formula", "materialized convolution agrees with the character formula");
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const auto prod = S.convolve(basis(i), basis(j));
      for (int k = 0; k < m; ++k) {
        const auto got = prod.count(k) ? prod.at(k) : 0;
        Report::record(formula, got == S.convolve_formula(i, j, k), json{{"i", i}, {"j", j}, {"k", k}});
      }
    }
  auto& unit = rep.add("unit", "C_Delta * V = V = V * C_Delta");
  for (int i = 0; i < m; ++i)
    Report::record(unit, S.convolve(one, basis(i)) == basis(i) && S.convolve(basis(i), one) == basis(i), json{{"i", i}});
  auto& assoc = rep.add("associativity", "(V * V') * V'' = V * (V' * V'')");
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        Report::record(assoc,
                       S.convolve(S.convolve(basis(i), basis(j)), basis(k)) ==
                           S.convolve(basis(i), S.convolve(basis(j), basis(k))),
                       json{{"i", i}, {"j", j}, {"k", k}});
  auto& anti = rep.add("sigma-antiautomorphism", "(V * V')^sigma = V'^sigma * V^sigma, sigma^2 = id");
  for (int i = 0; i < m; ++i) {
    Report::record(anti, S.sigma(S.sigma(basis(i))) == basis(i), json{{"i", i}});
    for (int j = 0; j < m; ++j)
      Report::record(anti, S.sigma(S.convolve(basis(i), basis(j))) == S.convolve(S.sigma(basis(j)), S.sigma(basis(i))),
                     json{{"i", i}, {"j", j}});
  }
  auto& sigma_mat = rep.add("sigma-materialized", "decomposing the pulled-back bundle gives the relabeled class");
  auto& dual = rep.add("self-dual-bundles", "the dual bundle is isomorphic to the bundle");
  for (int i = 0; i < m; ++i) {
    const auto b = S.realize(basis(i));
    Report::record(sigma_mat, S.decompose(S.sigma(b)) == S.sigma(basis(i)), json{{"i", i}});
    Report::record(dual, S.decompose(S.dual(b)) == basis(i), json{{"i", i}});
  }

  const auto& sd = S.self_dual();
  auto& circ_unit = rep.add("circ-unit", "C_Delta o (U, kappa) = (U, kappa)");
  auto& circ_assoc = rep.add("circ-module", "(V' * V) o U = V' o (V o U)");
  auto& circ_sum = rep.add("circ-direct-sum", "(V + V') o U = V o U + V' o U in Kbar");
  auto& circ_theta = rep.add("circ-theta", "V o Theta(V') = 0 and Theta(V') = 0 in Kbar");
  auto& sign = rep.add("sign", "(U, -kappa) = -(U, kappa) and the canonical kappa is a basis element");
  auto& valid = rep.add("sigma-structures", "every constructed kappa is an equivariant involution onto the sigma-pullback");
  for (int j : sd) {
    const SignedClass u{{j, 1}};
    Report::record(circ_unit, S.circ(one, u) == u, json{{"j", j}});
    Report::record(sign, S.decompose(S.realize_signed(u)) == u &&
                             S.decompose(S.realize_signed(SignedClass{{j, -1}})) == SignedClass{{j, -1}},
                   json{{"j", j}});
    const Object uo = S.realize_signed(u);
    Report::record(valid, S.is_sigma_structure(uo) && S.is_sigma_structure(S.realize_signed(SignedClass{{j, -1}})),
                   json{{"U", j}});
    for (int i = 0; i < m; ++i) {
      for (int k = 0; k < m; ++k)
        Report::record(circ_assoc, S.circ(S.convolve(basis(k), basis(i)), u) == S.circ(basis(k), S.circ(basis(i), u)),
                       json{{"V'", k}, {"V", i}, {"U", j}});
      // direct sum realized as an actual bundle; V' runs over i and its successor to bound the cost
      for (int k : {i, (i + 1) % m}) {
        SignedClass sum = S.circ(basis(i), u);
        for (const auto& [t, c] : S.circ(basis(k), u)) sum[t] += c;
        std::erase_if(sum, [](const auto& kv) { return kv.second == 0; });
        const auto ds = S.direct_sum(S.realize(basis(i)), S.realize(basis(k)));
        const auto w = S.circ(ds, uo);
        Report::record(circ_sum, S.decompose(w) == sum, json{{"V", i}, {"V'", k}, {"U", j}});
        Report::record(valid, S.is_sigma_structure(w), json{{"V", i}, {"V'", k}, {"U", j}});
      }
    }
  }
  for (int k = 0; k < m; ++k) {
    const auto th = S.theta(S.realize(basis(k)));
    Report::record(circ_theta, S.decompose(th).empty(), json{{"V'", k}});
    Report::record(valid, S.is_sigma_structure(th), json{{"Theta", k}});
    for (int i = 0; i < m; ++i)
      Report::record(circ_theta, S.decompose(S.circ(S.realize(basis(i)), th)).empty(), json{{"V", i}, {"V'", k}});
  }

  // Bundles on Gamma
  const Elem order = S.gamma_set().order();
  auto& psi_unit = rep.add("psi-unit", "Psi(unit) = C_Delta, nu(unit) = 1");
  Report::record(psi_unit, S.decompose(S.psi(gamma_unit(rank))) == one && nu(gamma_unit(rank)) == 1);
  auto& psi_hom = rep.add("psi-hom", "Psi(Y * Y') = Psi(Y) * Psi(Y'), nu multiplicative");
  auto& centre = rep.add("psi-central", "Psi(Y) * V = V * Psi(Y)");
  auto& scalar = rep.add("nu-action", "Y acts on Kbar as multiplication by nu(Y)");
  for (Elem g = 0; g < order; ++g)
    for (Elem a = 0; a < order; ++a) {
      const auto y = gamma_simple(rank, g, a);
      const auto py = S.decompose(S.psi(y));
      for (int i = 0; i < m; ++i)
        Report::record(centre, S.convolve(py, basis(i)) == S.convolve(basis(i), py), json{{"g", g}, {"a", a}, {"i", i}});
      for (int j : sd) Report::record(scalar, S.circ(py, SignedClass{{j, 1}}) == SignedClass{{j, nu(y)}}, json{{"g", g}, {"a", a}, {"j", j}});
      for (Elem g2 = 0; g2 < order; ++g2)
        for (Elem a2 = 0; a2 < order; ++a2) {
          const auto y2 = gamma_simple(rank, g2, a2);
          const auto yy = convolve(y, y2);
          Report::record(psi_hom,
                         S.decompose(S.psi(yy)) == S.convolve(py, S.decompose(S.psi(y2))) && nu(yy) == nu(y) * nu(y2),
                         json{{"Y", {g, a}}, {"Y'", {g2, a2}}});
        }
    }
  // a non-simple bundle on Gamma: the regular one, nu = |Gamma|^2
  GammaBundle reg;
  reg.fibers.resize(order);
  for (Elem g = 0; g < order; ++g)
    for (Elem a = 0; a < order; ++a) reg.fibers[g][a] = 1;
  const auto preg = S.decompose(S.psi(reg));
  for (int j : sd) Report::record(scalar, S.circ(preg, SignedClass{{j, 1}}) == SignedClass{{j, nu(reg)}}, json{{"Y", "regular"}, {"j", j}});
  return rep;
}

Report count_check(const Structure& S) {
  const auto& X = S.gamma_set();
  Report rep("eqvb-count", "Gamma rank " + std::to_string(X.rank()) + ", |X| = " + std::to_string(X.size()));
  auto& count = rep.add("kbar-rank", "rank of Kbar = |Gamma| x number of Gamma-orbits on X");
  const auto expected = static_cast<std::size_t>(X.order()) * S.x_orbits().size();
  Report::record(count, S.self_dual().size() == expected,
                 json{{"kbar_rank", S.self_dual().size()}, {"expected", expected}});
  auto& iso = rep.add("isotypic", "every simple bundle on Gamma acts on Kbar as the scalar nu = 1");
  for (Elem g = 0; g < X.order(); ++g)
    for (Elem a = 0; a < X.order(); ++a) {
      const auto py = S.decompose(S.psi(gamma_simple(X.rank(), g, a)));
      for (int j : S.self_dual())
        Report::record(iso, S.circ(py, SignedClass{{j, 1}}) == SignedClass{{j, 1}}, json{{"g", g}, {"a", a}, {"j", j}});
    }
  return rep;
}

Report cell_consistency(const CellGroupData& data, std::size_t cell_size, std::size_t left_cells,
                        std::size_t involutions_in_cell) {
  Report rep("eqvb-cell", "Gamma rank " + std::to_string(data.rank));
  const Structure S(GammaSet::from_cosets(data.rank, data.subgroups));
  const std::size_t order = std::size_t{1} << data.rank;
  auto& lc = rep.add("left-cells", "one subgroup per left cell, orbits on X = left cells");
  Report::record(lc, data.subgroups.size() == left_cells && S.x_orbits().size() == left_cells,
                 json{{"subgroups", data.subgroups.size()}, {"left_cells", left_cells}});
  auto& jdim = rep.add("J-dimension", "|c| = number of indecomposable bundles on X x X");
  Report::record(jdim, S.indecomposables().size() == cell_size,
                 json{{"cell_size", cell_size}, {"indecomposables", S.indecomposables().size()}});
  auto& cm = rep.add("cm-dimension", "|c cap I_*| = |Gamma| x number of left cells in c");
  Report::record(cm, involutions_in_cell == order * left_cells,
                 json{{"involutions", involutions_in_cell}, {"expected", order * left_cells}});
  auto& kb = rep.add("kbar-dimension", "|c cap I_*| = rank of Kbar");
  Report::record(kb, involutions_in_cell == S.self_dual().size(),
                 json{{"involutions", involutions_in_cell}, {"kbar_rank", S.self_dual().size()}});
  auto& dual = rep.add("self-dual-bundles", "the dual of every bundle on X x X is isomorphic to it");
  for (std::size_t i = 0; i < S.indecomposables().size(); ++i) {
    const BundleClass b{{static_cast<int>(i), 1}};
    Report::record(dual, S.decompose(S.dual(S.realize(b))) == b, json{{"i", i}});
  }
  return rep;
}

}  // namespace hinv::eqvb

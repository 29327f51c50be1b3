#pragma once

// Finite groups given by multiplication tables and finite bi-torsors: a set T
// with commuting free transitive actions G x T -> T and T x H -> T. Every
// x in T gives an isomorphism gamma_x : G -> H by g.x = x.gamma_x(g).

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "cohomotopy/errors.hpp"

namespace cohomotopy {

using Table = std::vector<std::vector<std::size_t>>;

class FiniteGroup {
 public:
  // Validates closure, associativity, identity and inverses.
  explicit FiniteGroup(Table mul) : mul_(std::move(mul)) {
    const std::size_t n = mul_.size();
    if (n == 0) throw UsageError("FiniteGroup: empty table");
    for (const auto& row : mul_) {
      if (row.size() != n) throw UsageError("FiniteGroup: table is not square");
      for (auto v : row)
        if (v >= n) throw UsageError("FiniteGroup: table entry out of range");
    }
    identity_ = n;
    for (std::size_t e = 0; e < n && identity_ == n; ++e) {
      bool ok = true;
      for (std::size_t a = 0; a < n && ok; ++a) ok = mul_[e][a] == a && mul_[a][e] == a;
      if (ok) identity_ = e;
    }
    if (identity_ == n) throw UsageError("FiniteGroup: no identity element");
    inverse_.assign(n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (mul_[a][b] == identity_ && mul_[b][a] == identity_) inverse_[a] = b;
    for (auto v : inverse_)
      if (v == n) throw UsageError("FiniteGroup: element without inverse");
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]]) throw UsageError("FiniteGroup: not associative");
  }

  static FiniteGroup cyclic(std::size_t n) {
    Table t(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return FiniteGroup(std::move(t));
  }

  // Permutations of {0..k-1} in lexicographic order; (s t)(i) = s(t(i)).
  static FiniteGroup symmetric(std::size_t k) {
    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> p(k);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return from_permutations(perms);
  }

  // Symmetries of the regular n-gon, order 2n: r^i s^j stored at 2i + j.
  static FiniteGroup dihedral(std::size_t n) {
    if (n < 1) throw UsageError("dihedral: n must be positive");
    // The polygon picture degenerates for n <= 2.
    if (n == 1) return cyclic(2);
    if (n == 2) return product(cyclic(2), cyclic(2));
    std::vector<std::vector<std::size_t>> perms;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        std::vector<std::size_t> p(n);
        for (std::size_t v = 0; v < n; ++v) p[v] = ((j ? (n - v) % n : v) + i) % n;
        perms.push_back(std::move(p));
      }
    return from_permutations(perms);
  }

  static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b) {
    const std::size_t na = a.order(), nb = b.order();
    Table t(na * nb, std::vector<std::size_t>(na * nb));
    for (std::size_t x = 0; x < na * nb; ++x)
      for (std::size_t y = 0; y < na * nb; ++y)
        t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
    return FiniteGroup(std::move(t));
  }

  std::size_t order() const noexcept { return mul_.size(); }
  std::size_t identity() const noexcept { return identity_; }
  std::size_t mul(std::size_t a, std::size_t b) const { return mul_.at(a).at(b); }
  std::size_t inverse(std::size_t a) const { return inverse_.at(a); }
  const Table& table() const noexcept { return mul_; }

  bool is_abelian() const {
    for (std::size_t a = 0; a < order(); ++a)
      for (std::size_t b = 0; b < a; ++b)
        if (mul_[a][b] != mul_[b][a]) return false;
    return true;
  }

 private:
  static FiniteGroup from_permutations(const std::vector<std::vector<std::size_t>>& perms) {
    const std::size_t n = perms.size();
    Table t(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        std::vector<std::size_t> c(perms[a].size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = perms[a][perms[b][i]];
        t[a][b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
      }
    return FiniteGroup(std::move(t));
  }

  Table mul_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> inverse_;
};

// Maps between finite groups, as index vectors.
using GroupMap = std::vector<std::size_t>;

inline bool is_homomorphism(const FiniteGroup& g, const FiniteGroup& h, const GroupMap& f) {
  if (f.size() != g.order()) return false;
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b)
      if (f[g.mul(a, b)] != h.mul(f[a], f[b])) return false;
  return true;
}

inline bool is_bijection(const GroupMap& f, std::size_t n) {
  if (f.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (auto v : f) {
    if (v >= n || hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

class FiniteBiTorsor {
 public:
  // left[g][x] = g.x, right[x][h] = x.h. Throws UsageError naming the first
  // violated axiom.
  FiniteBiTorsor(FiniteGroup g, FiniteGroup h, Table left, Table right)
      : g_(std::move(g)), h_(std::move(h)), left_(std::move(left)), right_(std::move(right)) {
    const std::size_t t = right_.size();
    if (left_.size() != g_.order()) throw UsageError("bi-torsor: left table needs one row per element of G");
    for (const auto& row : left_)
      if (row.size() != t) throw UsageError("bi-torsor: left table rows must cover T");
    for (const auto& row : right_)
      if (row.size() != h_.order()) throw UsageError("bi-torsor: right table rows must cover H");
    for (const auto& row : left_)
      for (auto v : row)
        if (v >= t) throw UsageError("bi-torsor: left action leaves T");
    for (const auto& row : right_)
      for (auto v : row)
        if (v >= t) throw UsageError("bi-torsor: right action leaves T");
    for (std::size_t x = 0; x < t; ++x) {
      if (left_[g_.identity()][x] != x || right_[x][h_.identity()] != x)
        throw UsageError("bi-torsor: identity does not act trivially");
      for (std::size_t a = 0; a < g_.order(); ++a)
        for (std::size_t b = 0; b < g_.order(); ++b)
          if (left_[a][left_[b][x]] != left_[g_.mul(a, b)][x])
            throw UsageError("bi-torsor: left table is not an action");
      for (std::size_t a = 0; a < h_.order(); ++a)
        for (std::size_t b = 0; b < h_.order(); ++b)
          if (right_[right_[x][a]][b] != right_[x][h_.mul(a, b)])
            throw UsageError("bi-torsor: right table is not an action");
    }
    // Free and transitive: each orbit map is a bijection onto T.
    for (std::size_t x = 0; x < t; ++x) {
      GroupMap l(g_.order()), r(h_.order());
      for (std::size_t a = 0; a < g_.order(); ++a) l[a] = left_[a][x];
      for (std::size_t a = 0; a < h_.order(); ++a) r[a] = right_[x][a];
      if (!is_bijection(l, t)) throw UsageError("bi-torsor: left action is not free and transitive");
      if (!is_bijection(r, t)) throw UsageError("bi-torsor: right action is not free and transitive");
    }
    for (std::size_t a = 0; a < g_.order(); ++a)
      for (std::size_t x = 0; x < t; ++x)
        for (std::size_t b = 0; b < h_.order(); ++b)
          if (right_[left_[a][x]][b] != left_[a][right_[x][b]])
            throw UsageError("bi-torsor: left and right actions do not commute");
  }

  // T = G with left and right translation.
  static FiniteBiTorsor regular(const FiniteGroup& g) { return twisted(g, identity_map(g)); }

  // T = G, g.x = g x, x.h = x phi(h) for an automorphism phi of G.
  static FiniteBiTorsor twisted(const FiniteGroup& g, const GroupMap& phi) {
    if (!is_bijection(phi, g.order()) || !is_homomorphism(g, g, phi))
      throw UsageError("bi-torsor: twist is not an automorphism");
    const std::size_t n = g.order();
    Table left(n, std::vector<std::size_t>(n)), right(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t x = 0; x < n; ++x) {
        left[a][x] = g.mul(a, x);
        right[x][a] = g.mul(x, phi[a]);
      }
    return FiniteBiTorsor(g, g, std::move(left), std::move(right));
  }

  static GroupMap identity_map(const FiniteGroup& g) {
    GroupMap m(g.order());
    std::iota(m.begin(), m.end(), 0);
    return m;
  }

  const FiniteGroup& left_group() const noexcept { return g_; }
  const FiniteGroup& right_group() const noexcept { return h_; }
  std::size_t size() const noexcept { return right_.size(); }
  std::size_t act_left(std::size_t g, std::size_t x) const { return left_.at(g).at(x); }
  std::size_t act_right(std::size_t x, std::size_t h) const { return right_.at(x).at(h); }

 private:
  FiniteGroup g_;
  FiniteGroup h_;
  Table left_;
  Table right_;
};

// gamma_x(g) is the unique h with g.x = x.h.
inline GroupMap gamma(const FiniteBiTorsor& b, std::size_t x) {
  const auto& h = b.right_group();
  std::vector<std::size_t> by_point(b.size());
  for (std::size_t a = 0; a < h.order(); ++a) by_point[b.act_right(x, a)] = a;
  GroupMap m(b.left_group().order());
  for (std::size_t g = 0; g < m.size(); ++g) m[g] = by_point[b.act_left(g, x)];
  return m;
}

// gamma_bar_x(h) is the unique g with g.x = x.h.
inline GroupMap gamma_bar(const FiniteBiTorsor& b, std::size_t x) {
  const auto& g = b.left_group();
  std::vector<std::size_t> by_point(b.size());
  for (std::size_t a = 0; a < g.order(); ++a) by_point[b.act_left(a, x)] = a;
  GroupMap m(b.right_group().order());
  for (std::size_t h = 0; h < m.size(); ++h) m[h] = by_point[b.act_right(x, h)];
  return m;
}

// The h in H with x1 = x2.h; checks gamma_{x1}(g) = h^{-1} gamma_{x2}(g) h for all g.
inline std::size_t verify_conjugacy(const FiniteBiTorsor& b, std::size_t x1, std::size_t x2) {
  const auto& hg = b.right_group();
  std::size_t h = hg.order();
  for (std::size_t a = 0; a < hg.order(); ++a)
    if (b.act_right(x2, a) == x1) h = a;
  if (h == hg.order()) throw ConsistencyError("verify_conjugacy: points lie in different orbits");
  const auto g1 = gamma(b, x1);
  const auto g2 = gamma(b, x2);
  const std::size_t hi = hg.inverse(h);
  for (std::size_t g = 0; g < g1.size(); ++g)
    if (g1[g] != hg.mul(hg.mul(hi, g2[g]), h))
      throw ConsistencyError("verify_conjugacy: conjugation identity fails at element " + std::to_string(g));
  return h;
}

}  // namespace cohomotopy

#pragma once

// Cup and cup-i products of simplicial cochains, and Sq^2 on cohomology.

#include <vector>

#include "cohomotopy/cohomology.hpp"
#include "cohomotopy/simplicial.hpp"

namespace cohomotopy {

// Alexander-Whitney: (x u y)(v0..v_{p+q}) = x(v0..vp) y(vp..v_{p+q}).
inline Cochain cup(const Cochain& x, const Cochain& y) {
  if (x.complex().get() != y.complex().get()) throw UsageError("cup: cochains live on different complexes");
  if (x.modulus() != y.modulus()) throw UsageError("cup: coefficient moduli differ");
  const auto& cx = *x.complex();
  const int p = x.degree(), q = y.degree();
  const auto& top = cx.simplices(p + q);
  Vector out(top.size());
  for (std::size_t r = 0; r < top.size(); ++r) {
    const Simplex& s = top[r];
    Simplex front(s.begin(), s.begin() + p + 1);
    const Integer a = x[*cx.index_of(front)];
    if (a == 0) continue;
    Simplex back(s.begin() + p, s.end());
    out[r] = a * y[*cx.index_of(back)];
  }
  return Cochain(x.complex(), p + q, x.modulus(), std::move(out));
}

// Mod-2 cup-i product in interval form. For an n-simplex (n = p+q-i) and
// 0 <= u_0 < ... < u_i <= n, cut [0, n] into I_0 = [0, u_0], I_1 = [u_0, u_1],
// ..., I_{i+1} = [u_i, n]; x is evaluated on the union of the even intervals
// and y on the union of the odd ones, keeping only cuts where those unions
// have p+1 and q+1 vertices.
inline Cochain cup_i(const Cochain& x, const Cochain& y, int i) {
  if (x.complex().get() != y.complex().get()) throw UsageError("cup_i: cochains live on different complexes");
  if (x.modulus() != 2 || y.modulus() != 2) throw UsageError("cup_i: coefficients must be Z/2");
  const int p = x.degree(), q = y.degree();
  if (i < 0 || i > std::min(p, q)) throw UsageError("cup_i: index out of range");
  const auto& cx = *x.complex();
  const int n = p + q - i;
  const auto& top = cx.simplices(n);
  Vector out(top.size());
  if (top.empty()) return Cochain(x.complex(), n, 2, std::move(out));

  // Enumerate the cuts once; they depend only on n and i.
  std::vector<std::pair<std::vector<int>, std::vector<int>>> cuts;
  std::vector<int> u(static_cast<std::size_t>(i) + 1);
  for (int k = 0; k <= i; ++k) u[static_cast<std::size_t>(k)] = k;
  for (;;) {
    std::vector<int> front, back;
    int lo = 0;
    for (int k = 0; k <= i + 1; ++k) {
      const int hi = k <= i ? u[static_cast<std::size_t>(k)] : n;
      auto& dst = (k % 2 == 0) ? front : back;
      for (int v = lo; v <= hi; ++v)
        if (dst.empty() || dst.back() != v) dst.push_back(v);
      lo = hi;
    }
    if (static_cast<int>(front.size()) == p + 1 && static_cast<int>(back.size()) == q + 1)
      cuts.emplace_back(std::move(front), std::move(back));
    int k = i;
    while (k >= 0 && u[static_cast<std::size_t>(k)] == n - (i - k)) --k;
    if (k < 0) break;
    ++u[static_cast<std::size_t>(k)];
    for (int j = k + 1; j <= i; ++j) u[static_cast<std::size_t>(j)] = u[static_cast<std::size_t>(j) - 1] + 1;
  }

  for (std::size_t r = 0; r < top.size(); ++r) {
    const Simplex& s = top[r];
    int acc = 0;
    for (const auto& [front, back] : cuts) {
      Simplex a, b;
      for (int v : front) a.push_back(s[static_cast<std::size_t>(v)]);
      const Integer& xa = x[*cx.index_of(a)];
      if (xa == 0) continue;
      for (int v : back) b.push_back(s[static_cast<std::size_t>(v)]);
      if (y[*cx.index_of(b)] != 0) acc ^= 1;
    }
    out[r] = acc;
  }
  return Cochain(x.complex(), n, 2, std::move(out));
}

// Sq^2 of a class with Z, Z/2 or Z/2^k coefficients, in H^{q+2}(X; Z/2).
inline CohomologyClass sq2(const SimplicialCohomology& h, const CohomologyClass& c) {
  if (c.modulus != 0 && c.modulus % 2 != 0) throw UsageError("sq2: coefficients must be Z or Z/2^k");
  if (c.degree < 2) return h.make_class(c.degree + 2, 2, h.group(c.degree + 2, 2).zero());
  Cochain z = h.representative(c).reduced(2);
  return h.classify(cup_i(z, z, c.degree - 2));
}

}  // namespace cohomotopy

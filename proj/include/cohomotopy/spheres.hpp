#pragma once

// Homotopy classes of maps into spheres computed from a cohomology model.
//
// For dim X <= n+1 (n >= 3), [X, S^n] sits in an exact sequence
//   0 -> coker(Sq2bar) -> [X, S^n] -> H^n(X; Z) -> 0,
// coker(Sq2bar) = H^{n+1}(X; Z/2) / Sq^2 H^{n-1}(X; Z). The extension is fixed
// by 2^k gbar = Sq^2(g') for a lift gbar of a generator g of order 2^k and any
// g' in H^{n-1}(X; Z/2^k) with delta_k(g') = g.
//
// For dim X <= 4 the fibre of [X, S^2] -> H^2(X; Z) over beta is nonempty iff
// beta u beta = 0, and is then in bijection with the cokernel of
// psi[beta] : H^1(X; Z) -> [X, S^3], alpha |-> 2 * lift(alpha u beta).

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cohomotopy/abelian.hpp"
#include "cohomotopy/errors.hpp"
#include "cohomotopy/model.hpp"

namespace cohomotopy {

// H^{n+1}(X; Z/2) / Sq^2(H^{n-1}(X; Z)) and the quotient map.
inline Quotient coker_sq2bar(const CohomologyModel& model, int n) {
  if (n < 1) throw UsageError("coker_sq2bar: n must be at least 1");
  GroupHom s = model.sq2(n - 1, 0);
  return hom_cokernel(s);
}

struct ExtensionRelation {
  std::size_t summand = 0;  // index into the primary decomposition of H^n
  Integer order;            // 2^k
  unsigned k = 0;
  Vector bockstein_lift;    // g' in H^{n-1}(X; Z/2^k)
  Vector correction;        // image of Sq^2(g') in coker(Sq2bar)
};

struct SphereMapGroup {
  int n = 0;
  std::shared_ptr<const FgAbGroup> group;
  std::shared_ptr<const FgAbGroup> coker;
  std::shared_ptr<const FgAbGroup> hn;
  GroupHom inclusion;   // coker -> group
  GroupHom projection;  // group -> H^n
  PrimaryDecomposition decomposition;
  // Lift of each canonical generator of H^n, in group coordinates.
  std::vector<Vector> section;
  std::vector<ExtensionRelation> relations;

  bool split() const { return group->isomorphic(direct_sum(*coker, *hn)); }
};

inline SphereMapGroup sphere_maps(const CohomologyModel& model, int n) {
  if (n < 3) throw UsageError("sphere_maps: n must be at least 3");
  if (model.dimension() > n + 1)
    throw UsageError("sphere_maps: model dimension " + std::to_string(model.dimension()) + " exceeds n+1 = " +
                     std::to_string(n + 1));
  Quotient ck = coker_sq2bar(model, n);
  auto coker = std::make_shared<const FgAbGroup>(ck.group);
  auto hn = model.group_ptr(n, 0);
  PrimaryDecomposition dec = primary_decompose(*hn);
  const std::size_t c = coker->generator_count();
  const std::size_t parts = dec.part_count();

  std::vector<Vector> rel;
  std::vector<ExtensionRelation> ext;
  for (std::size_t j = 0; j < c; ++j) {
    Vector v(c + parts);
    v[j] = coker->generator_order(j);
    rel.push_back(std::move(v));
  }
  for (std::size_t i = 0; i < dec.summands.size(); ++i) {
    const auto& s = dec.summands[i];
    Vector v(c + parts);
    v[c + i] = s.order;
    if (s.prime == 2) {
      GroupHom delta = model.bockstein(n - 1, s.exponent);
      auto lift = preimage(delta, s.generator);
      if (!lift)
        throw ConsistencyError("sphere_maps: no Bockstein preimage of a generator of order " + s.order.str() +
                               " in H^" + std::to_string(n) + "; the model's delta_" +
                               std::to_string(s.exponent) + " is not onto the 2^k-torsion");
      Vector corr = ck.map(model.sq2(n - 1, s.order)(*lift));
      for (std::size_t j = 0; j < c; ++j) v[j] = -corr[j];
      ext.push_back(ExtensionRelation{i, s.order, s.exponent, *lift, corr});
    }
    rel.push_back(std::move(v));
  }
  auto group = std::make_shared<const FgAbGroup>(cokernel(IntMatrix::from_columns(c + parts, rel)));

  std::vector<Vector> inc_cols;
  for (std::size_t j = 0; j < c; ++j) {
    Vector e(c + parts);
    e[j] = 1;
    inc_cols.push_back(group->canonical(e));
  }
  GroupHom inclusion(coker, group, IntMatrix::from_columns(group->generator_count(), inc_cols));

  std::vector<Vector> proj_cols;
  for (std::size_t g = 0; g < group->generator_count(); ++g) {
    Vector amb = group->basis_map().column(g);
    Vector p(amb.begin() + static_cast<std::ptrdiff_t>(c), amb.end());
    proj_cols.push_back(dec.recompose(*hn, p));
  }
  GroupHom projection(group, hn, IntMatrix::from_columns(hn->generator_count(), proj_cols));

  std::vector<Vector> section;
  for (std::size_t j = 0; j < hn->generator_count(); ++j) {
    Vector p = dec.to_parts * hn->generator(j);
    Vector amb(c + parts);
    for (std::size_t i = 0; i < parts; ++i) amb[c + i] = p[i];
    section.push_back(group->canonical(amb));
  }
  return SphereMapGroup{n,       std::move(group),      std::move(coker), std::move(hn),     std::move(inclusion),
                        std::move(projection), std::move(dec), std::move(section), std::move(ext)};
}

// gamma |-> sign * 2 * lift(gamma) as a homomorphism H^n(X; Z) -> [X, S^n].
// Any two lifts differ by an element of the elementary 2-group coker(Sq2bar),
// so the result does not depend on the section.
inline GroupHom two_lift_hom(const SphereMapGroup& s, const std::vector<Vector>* section = nullptr,
                             int sign = 1) {
  const auto& sec = section ? *section : s.section;
  if (sec.size() != s.hn->generator_count()) throw UsageError("two_lift_hom: section has the wrong size");
  std::vector<Vector> cols;
  for (const auto& v : sec) cols.push_back(s.group->scale(2 * sign, v));
  return GroupHom(s.hn, s.group, IntMatrix::from_columns(s.group->generator_count(), cols));
}

// psi[beta] = two_lift o ((-) u beta) : H^1(X; Z) -> [X, S^3].
inline GroupHom psi_beta(const CohomologyModel& model, const SphereMapGroup& s, const Vector& beta, int sign = 1) {
  if (s.n != 3) throw UsageError("psi_beta: needs [X, S^3]");
  return compose(two_lift_hom(s, nullptr, sign), model.cup_with(beta, 1, 2, 0));
}

inline GroupHom psi_beta(const CohomologyModel& model, const Vector& beta, int sign = 1) {
  return psi_beta(model, sphere_maps(model, 3), beta, sign);
}

struct FiberReport {
  Vector beta;
  Vector beta_square;  // in H^4(X; Z)
  bool realizable = false;
  // Set when realizable.
  std::optional<Quotient> fiber;    // coker psi[beta], quotient of [X, S^3]
  std::optional<Quotient> p_beta;   // coker of 2(-) u beta : H^1 -> H^3
  std::optional<GroupHom> q;        // coker(Sq2bar) -> fiber
  std::optional<GroupHom> to_p_beta;  // fiber -> p_beta
  // Generators of ker q inside coker(Sq2bar): the classes Sq^2(a) for
  // a in H^2(X; Z/2) with delta_1(a) in the image of (-) u beta.
  std::vector<Vector> q_kernel;
  std::vector<Vector> q_kernel_sources;  // the a's

  std::string fiber_string() const { return fiber ? fiber->group.to_string() : "empty"; }
};

inline FiberReport pi2_fiber(const CohomologyModel& model, const SphereMapGroup& s, const Vector& beta, int sign = 1) {
  if (model.dimension() > 4) throw UsageError("pi2_fiber: model dimension exceeds 4");
  const auto& h2 = model.group(2, 0);
  if (beta.size() != h2.generator_count())
    throw UsageError("pi2_fiber: beta needs " + std::to_string(h2.generator_count()) + " coordinates");
  FiberReport r;
  r.beta = h2.reduce(beta);
  r.beta_square = model.cup(2, 2, 0, r.beta, r.beta);
  r.realizable = model.group(4, 0).is_zero(r.beta_square);
  if (!r.realizable) return r;

  GroupHom cup_beta = model.cup_with(r.beta, 1, 2, 0);
  GroupHom psi = compose(two_lift_hom(s, nullptr, sign), cup_beta);
  Quotient fiber = hom_cokernel(psi);
  Quotient pb = hom_cokernel(cup_beta.scaled(2));
  auto fiber_ptr = std::make_shared<const FgAbGroup>(fiber.group);
  auto pb_ptr = std::make_shared<const FgAbGroup>(pb.group);
  GroupHom q(s.coker, fiber_ptr, fiber.map.matrix() * s.inclusion.matrix());
  GroupHom to_pb(fiber_ptr, pb_ptr, pb.map.matrix() * s.projection.matrix() * fiber.group.basis_map());

  // a in H^2(Z/2) with delta_1(a) in im(u beta): kernel of H^2(Z/2) -> H^3(Z) / im(u beta).
  Quotient h3_mod = hom_cokernel(cup_beta);
  GroupHom delta = compose(h3_mod.map, model.bockstein(2, 1));
  Quotient sq_to_c = coker_sq2bar(model, 3);
  GroupHom sq = model.sq2(2, 2);
  for (const auto& a : kernel_generators(delta)) {
    Vector img = sq_to_c.map(sq(a));
    r.q_kernel_sources.push_back(a);
    if (!s.coker->is_zero(img)) r.q_kernel.push_back(std::move(img));
  }

  r.fiber = std::move(fiber);
  r.p_beta = std::move(pb);
  r.q = std::move(q);
  r.to_p_beta = std::move(to_pb);
  return r;
}

inline FiberReport pi2_fiber(const CohomologyModel& model, const Vector& beta, int sign = 1) {
  if (model.dimension() > 4) throw UsageError("pi2_fiber: model dimension exceeds 4");
  return pi2_fiber(model, sphere_maps(model, 3), beta, sign);
}

struct Pi2Enumeration {
  std::vector<FiberReport> reports;
  // Sum of fibre orders, when every fibre is finite.
  std::optional<Integer> total;
};

// One report per beta in H^2(X; Z); free coordinates range over [-bound, bound].
inline Pi2Enumeration pi2_enumerate(const CohomologyModel& model, std::optional<Integer> bound = std::nullopt) {
  const auto& h2 = model.group(2, 0);
  if (!h2.is_finite() && !bound)
    throw UsageError("pi2_enumerate: H^2(X; Z) is infinite; supply a bound for the free coordinates");
  if (bound && *bound < 0) throw UsageError("pi2_enumerate: bound must be nonnegative");
  SphereMapGroup s = sphere_maps(model, 3);
  Pi2Enumeration out;
  Integer total = 0;
  bool finite = true;
  for (const auto& beta : enumerate_elements(h2, bound.value_or(0))) {
    auto r = pi2_fiber(model, s, beta);
    if (r.realizable) {
      auto o = r.fiber->group.order();
      if (o)
        total += *o;
      else
        finite = false;
    }
    out.reports.push_back(std::move(r));
  }
  if (finite) out.total = total;
  return out;
}

// coker of 2(-) u beta : H^1(X; Z) -> H^3(X; Z), for dim X <= 3.
inline FgAbGroup pontrjagin_fiber(const CohomologyModel& model, const Vector& beta) {
  if (model.dimension() > 3)
    throw UsageError("pontrjagin_fiber: model dimension exceeds 3; use pi2_fiber for 4-dimensional models");
  const auto& h2 = model.group(2, 0);
  if (beta.size() != h2.generator_count())
    throw UsageError("pontrjagin_fiber: beta needs " + std::to_string(h2.generator_count()) + " coordinates");
  return hom_cokernel(model.cup_with(beta, 1, 2, 0).scaled(2)).group;
}

// Type of a closed oriented 4-manifold model: 1 if some integral class has odd
// square, 2 if every mod-2 class squares to zero, 3 otherwise.
inline int classify_4manifold_type(const CohomologyModel& model) {
  if (model.dimension() != 4) throw UsageError("classify-type: model must be 4-dimensional");
  const auto& h4 = model.group(4, 0);
  if (h4.free_rank() != 1 || !h4.torsion().empty())
    throw UsageError("classify-type: H^4(X; Z) must be infinite cyclic (closed orientable manifold), got " +
                     h4.to_string());
  // x u x mod 2 is additive, so parity of squares is decided on generators.
  const auto& h2 = model.group(2, 0);
  const auto t = model.cup_table(2, 2, 0);
  for (std::size_t i = 0; i < h2.generator_count(); ++i)
    if (t[i][i][0] % 2 != 0) return 1;
  const auto& h2m = model.group(2, 2);
  const auto& h4m = model.group(4, 2);
  if (model.has_cup(2, 2, 2)) {
    const auto tm = model.cup_table(2, 2, 2);
    for (std::size_t i = 0; i < h2m.generator_count(); ++i)
      if (!h4m.is_zero(tm[i][i])) return 3;
    return 2;
  }
  GroupHom s = model.sq2(2, 2);
  return s.is_zero() ? 2 : 3;
}

}  // namespace cohomotopy

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
// A time limit of 0 means none.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

#include "support.hpp"

using namespace cohomotopy;
using namespace testing_support;

namespace {

struct Checker {
  std::size_t checks = 0;
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
};

using Clock = std::chrono::steady_clock;

int failed_criteria = 0;

void criterion(const std::string& name, double limit_s, const std::function<void(Checker&)>& body) {
  Checker c;
  const auto t0 = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (limit_s > 0 && secs >= limit_s) c.failures.push_back("took " + std::to_string(secs) + " s, limit " + std::to_string(limit_s) + " s");
  const bool ok = c.failures.empty();
  if (!ok) ++failed_criteria;
  std::printf("%s  %-44s %7.3f s  %zu checks\n", ok ? "PASS" : "FAIL", name.c_str(), secs, c.checks);
  for (std::size_t i = 0; i < c.failures.size() && i < 10; ++i) std::printf("      %s\n", c.failures[i].c_str());
  std::fflush(stdout);
}

FgAbGroup group_of(std::size_t free_rank, Vector torsion = {}) { return FgAbGroup::from_invariants(free_rank, torsion); }

// H^q(X; Z) from ranks and invariant factors of the coboundary matrices.
FgAbGroup integral_oracle(const SimplicialComplex& x, int q) {
  const std::size_t n = x.count(q);
  const std::size_t r_out = q < x.dimension() ? rank_of(coboundary(x, q)) : 0;
  Vector tors;
  std::size_t r_in = 0;
  if (q > 0) {
    const IntMatrix d = coboundary(x, q - 1);
    r_in = rank_of(d);
    for (const auto& f : invariant_factors(d))
      if (f > 1) tors.push_back(f);
  }
  return group_of(n - r_out - r_in, tors);
}

std::vector<CohomologyModel> property_models() {
  std::vector<CohomologyModel> v;
  for (const auto& name : json_models()) v.push_back(model_fixture(name));
  for (const auto& [name, c] : small_complexes()) v.push_back(model_from_simplicial(c));
  return v;
}

void snf_properties(Checker& c) {
  for (int trial = 0; trial < 520; ++trial) {
    const auto r = static_cast<std::size_t>(uniform(1, 5));
    const auto k = static_cast<std::size_t>(uniform(1, 5));
    IntMatrix a = random_matrix(r, k);
    if (trial % 4 == 0 && r > 1)
      for (std::size_t j = 0; j < k; ++j) a(r - 1, j) = a(0, j) * 2;
    auto s = smith_normal_form(a, {true, true, true, true});
    const std::string tag = "snf trial " + std::to_string(trial);
    c.expect(s.U * a * s.V == s.S, tag + ": U A V = S");
    c.expect(s.U * s.U_inverse == IntMatrix::identity(r), tag + ": U invertible");
    c.expect(s.V * s.V_inverse == IntMatrix::identity(k), tag + ": V invertible");
    c.expect(s.S.is_diagonal(), tag + ": S diagonal");
    for (std::size_t i = 0; i + 1 < s.rank; ++i) c.expect(s.S(i + 1, i + 1) % s.S(i, i) == 0, tag + ": divisibility");
    Vector d;
    for (std::size_t i = 0; i < s.rank; ++i) d.push_back(s.S(i, i));
    c.expect(d == invariant_factors_by_minors(a), tag + ": minors oracle");
  }
}

void cochain_properties(Checker& c) {
  for (const auto& [name, x] : small_complexes())
    for (long long m : {0, 2, 3}) {
      for (int p = 0; p + 2 <= x->dimension(); ++p) {
        auto a = random_cochain(x, p, m);
        c.expect(coboundary(coboundary(a)).is_zero(), name + ": delta^2 = 0");
      }
      for (int p = 0; p <= x->dimension(); ++p)
        for (int q = 0; p + q + 1 <= x->dimension(); ++q) {
          auto a = random_cochain(x, p, m);
          auto b = random_cochain(x, q, m);
          const Integer sign = p % 2 ? -1 : 1;
          c.expect(coboundary(cup(a, b)) == cup(coboundary(a), b) + cup(a, coboundary(b)) * sign, name + ": Leibniz");
        }
    }
}

void square_properties(Checker& c) {
  for (const auto& [name, x] : small_complexes()) {
    SimplicialCohomology h(x);
    for (int q = 0; q <= x->dimension(); ++q)
      for (const auto& coords : enumerate_elements(h.group(q, 2))) {
        auto cls = h.make_class(q, 2, coords);
        auto z = h.representative(cls);
        c.expect(h.classify(cup_i(z, z, q)).coordinates == cls.coordinates, name + ": Sq^0 = id");
        if (2 * q <= x->dimension())
          c.expect(h.classify(cup_i(z, z, 0)).coordinates == h.classify(cup(z, z)).coordinates,
                   name + ": Sq^q = square");
      }
  }
}

void bockstein_properties(Checker& c) {
  for (const auto& [name, x] : small_complexes()) {
    auto md = model_from_simplicial(x, 2);
    for (int q = 0; q < x->dimension(); ++q)
      for (unsigned k = 1; k <= md.k_max(); ++k) {
        const Integer m = CohomologyModel::power_of_two(k);
        GroupHom delta = md.bockstein(q, k);
        auto target = md.group_ptr(q + 1, 0);
        GroupHom times(target, target, IntMatrix::identity(target->generator_count()) * m);
        c.expect(compose(times, delta).is_zero(), name + ": image delta_k in ker 2^k");
        for (const auto& v : kernel_generators(times))
          c.expect(preimage(delta, v).has_value(), name + ": ker 2^k in image delta_k");
      }
  }
}

void fibre_properties(Checker& c) {
  for (const auto& model : property_models()) {
    if (model.dimension() > 4) continue;
    auto s = sphere_maps(model, 3);
    // Section independence.
    auto base = two_lift_hom(s);
    for (int trial = 0; trial < 4; ++trial) {
      auto sec = s.section;
      for (auto& v : sec) v = s.group->add(v, s.inclusion(random_element(*s.coker)));
      c.expect(two_lift_hom(s, &sec).matrix() == base.matrix(), "two_lift_hom section independence");
    }
    const auto& h2 = model.group(2, 0);
    for (const auto& beta : enumerate_elements(h2, h2.is_finite() ? 0 : 2)) {
      auto r = pi2_fiber(model, s, beta);
      if (!r.realizable) continue;
      // Sign independence: the images of psi and -psi coincide.
      auto neg = pi2_fiber(model, s, beta, -1);
      c.expect(neg.fiber->group.isomorphic(r.fiber->group), "coker psi sign independence");
      auto psi_neg = psi_beta(model, s, beta, -1);
      for (std::size_t j = 0; j < psi_neg.source().generator_count(); ++j)
        c.expect(r.fiber->group.is_zero(r.fiber->map(psi_neg.matrix().column(j))), "image of -psi inside image of psi");
      if (r.fiber->group.is_finite())
        c.expect(*r.fiber->group.order() == *r.p_beta->group.order() * image_order(*r.q), "|fiber| = |P_beta| |im q|");
    }
  }
}

void torsor_properties(Checker& c) {
  std::vector<FiniteGroup> groups;
  for (std::size_t n = 1; n <= 24; ++n) groups.push_back(FiniteGroup::cyclic(n));
  for (std::size_t n = 3; n <= 12; ++n) groups.push_back(FiniteGroup::dihedral(n));
  groups.push_back(FiniteGroup::symmetric(3));
  groups.push_back(FiniteGroup::symmetric(4));
  groups.push_back(FiniteGroup::product(FiniteGroup::symmetric(3), FiniteGroup::cyclic(4)));
  groups.push_back(FiniteGroup::product(FiniteGroup::dihedral(4), FiniteGroup::cyclic(3)));
  for (const auto& g : groups) {
    const std::size_t n = g.order();
    // Twisted by an inner automorphism.
    GroupMap phi(n);
    const std::size_t t = n / 2;
    for (std::size_t a = 0; a < n; ++a) phi[a] = g.mul(g.mul(g.inverse(t), a), t);
    for (const auto& b : {FiniteBiTorsor::regular(g), FiniteBiTorsor::twisted(g, phi)})
      for (std::size_t x = 0; x < n; ++x) {
        std::vector<int> hits(n, 0);
        for (std::size_t a = 0; a < n; ++a) ++hits[b.act_left(a, x)];
        c.expect(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }), "left action free and transitive");
        const auto gx = gamma(b, x);
        const auto gb = gamma_bar(b, x);
        c.expect(is_homomorphism(g, g, gx) && is_bijection(gx, n), "gamma_x is an isomorphism");
        for (std::size_t a = 0; a < n; ++a) c.expect(gb[gx[a]] == a, "gamma_bar inverts gamma");
        for (std::size_t y = 0; y < n; ++y) {
          const std::size_t h = verify_conjugacy(b, x, y);
          c.expect(b.act_right(y, h) == x, "conjugating element moves y to x");
        }
      }
  }
}

}  // namespace

int main() {
  criterion("S2 x S1 fibres Z, Z/2, Z/4, Z/6", 1.0, [](Checker& c) {
    auto x = model_fixture("s2xs1.json");
    for (int k = 0; k <= 3; ++k) {
      auto r = pi2_fiber(x, {k});
      const FgAbGroup want = k == 0 ? group_of(1) : group_of(0, {2 * k});
      c.expect(r.realizable && r.fiber->group.isomorphic(want), "c = " + std::to_string(k) + ": " + r.fiber_string());
    }
  });

  criterion("S2 x T2 fibres and realizability", 1.0, [](Checker& c) {
    auto x = model_fixture("s2xt2.json");
    for (int a : {1, 2, 3}) {
      auto r = pi2_fiber(x, {a, 0});
      c.expect(r.realizable && r.fiber->group.isomorphic(group_of(2, {2})), "a = " + std::to_string(a) + ": " + r.fiber_string());
    }
    for (int b : {1, 2}) {
      auto r = pi2_fiber(x, {0, b});
      c.expect(r.realizable && r.fiber->group.isomorphic(group_of(0, {2, 2 * b, 2 * b})),
               "b = " + std::to_string(b) + ": " + r.fiber_string());
    }
    for (int a : {1, 2})
      for (int b : {1, -1, 2}) c.expect(!pi2_fiber(x, {a, b}).realizable, "ab != 0 must not be realizable");
  });

  criterion("Enriques/Habegger-type [X,S^3] = Z/4", 1.0, [](Checker& c) {
    for (const char* f : {"enriques_type.json", "habegger_type.json"}) {
      auto s = sphere_maps(model_fixture(f), 3);
      c.expect(s.group->isomorphic(group_of(0, {4})), std::string(f) + ": " + s.group->to_string());
      c.expect(!s.split(), std::string(f) + ": extension must not split");
      c.expect(s.coker->isomorphic(group_of(0, {2})) && s.hn->isomorphic(group_of(0, {2})),
               std::string(f) + ": Z/2 -> Z/4 -> Z/2");
    }
  });

  criterion("Pontrjagin consistency in dimension <= 3", 0, [](Checker& c) {
    std::vector<std::pair<std::string, CohomologyModel>> models;
    models.emplace_back("s2xs1.json", model_fixture("s2xs1.json"));
    for (const char* f : {"circle", "sphere2", "sphere3", "rp2", "torus", "s2xs1"})
      models.emplace_back(f, model_from_simplicial(complex_fixture(std::string(f) + ".facets")));
    for (const auto& [name, cx] : small_complexes())
      if (cx->dimension() <= 3) models.emplace_back(name, model_from_simplicial(cx));
    for (const auto& [name, model] : models) {
      const auto& h2 = model.group(2, 0);
      for (const auto& beta : enumerate_elements(h2, h2.is_finite() ? 0 : 3)) {
        auto r = pi2_fiber(model, beta);
        c.expect(r.realizable && r.fiber->group.isomorphic(pontrjagin_fiber(model, beta)),
                 name + " beta " + to_string(beta));
      }
    }
  });

  criterion("4-manifold type classification", 0, [](Checker& c) {
    const std::vector<std::pair<const char*, int>> want{
        {"cp2.json", 1}, {"t4.json", 2}, {"s2xs2.json", 2}, {"habegger_type.json", 3}};
    for (const auto& [f, t] : want) {
      const int got = classify_4manifold_type(model_fixture(f));
      c.expect(got == t, std::string(f) + ": type " + std::to_string(got));
    }
  });

  criterion("simplicial pipeline cross-check", 30.0, [](Checker& c) {
    for (const char* f : {"circle", "sphere2", "sphere3", "rp2", "torus", "s2xs1", "s2xt2"}) {
      auto x = complex_fixture(std::string(f) + ".facets");
      SimplicialCohomology h(x);
      for (int q = 0; q <= x->dimension(); ++q)
        c.expect(h.group(q).isomorphic(integral_oracle(*x, q)), std::string(f) + " H^" + std::to_string(q));
      model_from_simplicial(x);
    }
    auto s2 = SimplicialCohomology(complex_fixture("sphere2.facets"));
    c.expect(s2.group(1).is_trivial() && s2.group(2).isomorphic(group_of(1)), "boundary of the 3-simplex");
    auto s3 = SimplicialCohomology(complex_fixture("sphere3.facets"));
    c.expect(s3.group(1).is_trivial() && s3.group(2).is_trivial() && s3.group(3).isomorphic(group_of(1)),
             "boundary of the 4-simplex");
    auto rp2 = model_from_simplicial(complex_fixture("rp2.facets"));
    c.expect(rp2.group(2).isomorphic(group_of(0, {2})), "H^2(RP^2) = Z/2");
    c.expect(rp2.bockstein(1, 1).matrix() == IntMatrix{{1}}, "delta_1 iso on RP^2");
    auto torus = model_from_simplicial(complex_fixture("torus.facets"));
    auto t = torus.cup_table(1, 1, 0);
    c.expect(t[0][0] == Vector{0} && t[1][1] == Vector{0}, "torus squares vanish");
    c.expect(abs_value(t[0][1][0]) == 1 && t[1][0][0] == -t[0][1][0], "torus cup table");
  });

  criterion("property suites", 120.0, [](Checker& c) {
    snf_properties(c);
    cochain_properties(c);
    square_properties(c);
    bockstein_properties(c);
    fibre_properties(c);
    torsor_properties(c);
  });

  std::printf("%s\n", failed_criteria == 0 ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return failed_criteria == 0 ? 0 : 1;
}

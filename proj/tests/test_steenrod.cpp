#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace cohomotopy;
using namespace testing_support;

namespace {

Integer sign_of(int p, int q) { return (p * q) % 2 ? Integer(-1) : Integer(1); }

// Fundamental cycle of a closed oriented surface: the integer kernel of the
// boundary d_2 = delta_1^T.
Vector fundamental_cycle(const SimplicialComplex& x) {
  IntMatrix k = kernel_basis(coboundary(x, 1).transpose());
  REQUIRE(k.cols() == 1);
  return k.column(0);
}

Integer evaluate(const Cochain& c, const Vector& cycle) {
  Integer s = 0;
  for (std::size_t i = 0; i < cycle.size(); ++i) s += c[i] * cycle[i];
  return s;
}

}  // namespace

TEST_CASE("cup with the unit cochain", "[steenrod]") {
  for (const auto& [name, x] : small_complexes()) {
    INFO(name);
    for (long long m : {0, 2, 3}) {
      auto one = Cochain::constant(x, 0, 1, m);
      for (int q = 0; q <= x->dimension(); ++q) {
        auto c = random_cochain(x, q, m);
        CHECK(cup(c, one) == c);
        CHECK(cup(one, c) == c);
      }
    }
  }
}

TEST_CASE("torus cup products", "[steenrod]") {
  auto x = complex_fixture("torus.facets");
  SimplicialCohomology h(x);
  REQUIRE(h.group(1).to_string() == "Z^2");
  auto a = h.representative(h.make_class(1, 0, {1, 0}));
  auto b = h.representative(h.make_class(1, 0, {0, 1}));
  const Vector fund = fundamental_cycle(*x);
  // Evaluation on the fundamental cycle identifies H^2 with Z.
  CHECK(abs_value(evaluate(cup(a, b), fund)) == 1);
  CHECK(evaluate(cup(a, a), fund) == 0);
  CHECK(evaluate(cup(b, b), fund) == 0);
  CHECK(evaluate(cup(a, b), fund) == -evaluate(cup(b, a), fund));
  CHECK(abs_value(h.classify(cup(a, b)).coordinates[0]) == 1);
  CHECK(h.classify(cup(a, a)).coordinates[0] == 0);
}

TEST_CASE("positive degree cups vanish on the 2-sphere", "[steenrod]") {
  auto x = complex_fixture("sphere2.facets");
  SimplicialCohomology h(x);
  auto u = h.representative(h.make_class(2, 0, {1}));
  auto sq = cup(u, u);
  CHECK(sq.degree() == 4);
  CHECK(sq.values().empty());
  CHECK(h.group(4).is_trivial());
}

TEST_CASE("cup rejects mismatched operands", "[steenrod]") {
  auto x = complex_fixture("circle.facets");
  auto y = complex_fixture("torus.facets");
  CHECK_THROWS_AS(cup(random_cochain(x, 0, 0), random_cochain(y, 0, 0)), UsageError);
  CHECK_THROWS_AS(cup(random_cochain(x, 0, 0), random_cochain(x, 0, 2)), UsageError);
  CHECK_THROWS_AS(cup_i(random_cochain(x, 1, 3), random_cochain(x, 1, 3), 0), UsageError);
  CHECK_THROWS_AS(cup_i(random_cochain(x, 1, 2), random_cochain(x, 1, 2), 2), UsageError);
  CHECK_THROWS_AS(cup_i(random_cochain(x, 1, 2), random_cochain(x, 0, 2), 1), UsageError);
  CHECK_THROWS_AS(cup_i(random_cochain(x, 1, 2), random_cochain(x, 1, 2), -1), UsageError);
}

TEST_CASE("Leibniz rule on random cochains", "[steenrod][property]") {
  for (const auto& [name, x] : small_complexes()) {
    INFO(name);
    for (long long m : {0, 2, 4, 3}) {
      for (int p = 0; p <= x->dimension(); ++p)
        for (int q = 0; p + q + 1 <= x->dimension(); ++q) {
          auto a = random_cochain(x, p, m);
          auto b = random_cochain(x, q, m);
          auto lhs = coboundary(cup(a, b));
          auto rhs = cup(coboundary(a), b) + cup(a, coboundary(b)) * sign_of(p, 1);
          CHECK(lhs == rhs);
        }
    }
  }
}

TEST_CASE("cup_0 is the mod 2 cup product", "[steenrod][property]") {
  for (const auto& [name, x] : small_complexes()) {
    INFO(name);
    for (int p = 0; p <= x->dimension(); ++p)
      for (int q = 0; p + q <= x->dimension(); ++q) {
        auto a = random_cochain(x, p, 2);
        auto b = random_cochain(x, q, 2);
        CHECK(cup_i(a, b, 0) == cup(a, b));
      }
  }
}

TEST_CASE("cup_i coboundary identity on random mod 2 cochains", "[steenrod][property]") {
  // delta(x u_i y) = x u_{i-1} y + y u_{i-1} x + dx u_i y + x u_i dy, with u_{-1} = 0.
  for (const auto& [name, x] : small_complexes()) {
    INFO(name);
    const int d = x->dimension();
    for (int p = 0; p <= d; ++p)
      for (int q = 0; q <= d; ++q)
        for (int i = 0; i <= std::min(p, q); ++i) {
          const int n = p + q - i;
          if (n + 1 > d) continue;
          INFO("p=" << p << " q=" << q << " i=" << i);
          for (int trial = 0; trial < 3; ++trial) {
            auto a = random_cochain(x, p, 2);
            auto b = random_cochain(x, q, 2);
            auto rhs = Cochain::zero(x, n + 1, 2);
            if (i > 0) rhs = rhs + cup_i(a, b, i - 1) + cup_i(b, a, i - 1);
            if (i <= std::min(p + 1, q)) rhs = rhs + cup_i(coboundary(a), b, i);
            if (i <= std::min(p, q + 1)) rhs = rhs + cup_i(a, coboundary(b), i);
            CHECK(coboundary(cup_i(a, b, i)) == rhs);
          }
        }
  }
}

TEST_CASE("Sq^0 is the identity and Sq^q is the cup square", "[steenrod][property]") {
  for (const auto& [name, x] : small_complexes()) {
    INFO(name);
    SimplicialCohomology h(x);
    for (int q = 0; q <= x->dimension(); ++q)
      for (const auto& coords : enumerate_elements(h.group(q, 2))) {
        auto c = h.make_class(q, 2, coords);
        auto z = h.representative(c);
        CHECK(h.classify(cup_i(z, z, q)).coordinates == c.coordinates);
        if (2 * q <= x->dimension()) CHECK(h.classify(cup_i(z, z, 0)).coordinates == h.classify(cup(z, z)).coordinates);
      }
  }
}

TEST_CASE("RP2 generator squares to the top class", "[steenrod]") {
  auto x = complex_fixture("rp2.facets");
  REQUIRE(x->count(1) == 15);
  REQUIRE(x->count(2) == 10);
  SimplicialCohomology h(x);

  // Enumerate C^1(Z/2) as bit masks: all coboundaries in degree 2 and all 1-cocycles.
  const IntMatrix d1 = coboundary(*x, 1, 2);
  auto apply = [&](std::uint32_t mask) {
    std::uint32_t out = 0;
    for (std::size_t r = 0; r < d1.rows(); ++r) {
      int v = 0;
      for (std::size_t c = 0; c < d1.cols(); ++c)
        if ((mask >> c) & 1u) v ^= static_cast<int>(d1(r, c) % 2);
      if (v) out |= 1u << r;
    }
    return out;
  };
  std::vector<bool> is_boundary(1u << 10, false);
  std::vector<std::uint32_t> cocycles;
  for (std::uint32_t mask = 0; mask < (1u << 15); ++mask) {
    const std::uint32_t img = apply(mask);
    is_boundary[img] = true;
    if (img == 0) cocycles.push_back(mask);
  }
  auto to_cochain = [&](std::uint32_t mask, int q) {
    Vector v(x->count(q));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = (mask >> i) & 1u;
    return Cochain(x, q, 2, v);
  };
  auto to_mask = [](const Cochain& c) {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < c.values().size(); ++i)
      if (c[i] != 0) m |= 1u << i;
    return m;
  };
  // H^1 = Z^1 / B^1 has 2 elements; H^2 = C^2 / B^2 has 2 elements.
  std::size_t boundaries = 0;
  for (bool b : is_boundary) boundaries += b;
  CHECK(cocycles.size() == 2 * 32);
  CHECK(boundaries * 2 == (1u << 10));

  std::size_t nonzero_squares = 0;
  for (auto z : cocycles) {
    auto c = to_cochain(z, 1);
    if (!is_boundary[to_mask(cup_i(c, c, 0))]) ++nonzero_squares;
  }
  // Exactly the cocycles outside B^1 square non-trivially.
  CHECK(nonzero_squares == 32);

  auto w = h.representative(h.make_class(1, 2, {1}));
  CHECK_FALSE(is_boundary[to_mask(cup_i(w, w, 0))]);
  CHECK(h.classify(cup(w, w)).coordinates == Vector{1});
}

TEST_CASE("graded commutativity on cohomology", "[steenrod][property]") {
  for (const auto& [name, x] : small_complexes()) {
    INFO(name);
    SimplicialCohomology h(x);
    for (long long m : {0, 2, 4})
      for (int p = 1; p <= x->dimension(); ++p)
        for (int q = 1; p + q <= x->dimension(); ++q)
          for (int trial = 0; trial < 3; ++trial) {
            auto a = h.representative(h.make_class(p, m, random_element(h.group(p, m))));
            auto b = h.representative(h.make_class(q, m, random_element(h.group(q, m))));
            auto diff = cup(a, b) - cup(b, a) * sign_of(p, q);
            // The difference is a coboundary: zero class.
            CHECK(h.group(p + q, m).is_zero(h.classify(diff).coordinates));
          }
  }
}

TEST_CASE("sq2 on low degrees and on degree two", "[steenrod]") {
  for (const auto& [name, x] : small_complexes()) {
    INFO(name);
    SimplicialCohomology h(x);
    for (int q = 0; q < 2 && q <= x->dimension(); ++q)
      for (long long m : {0, 2}) {
        auto c = h.make_class(q, m, random_element(h.group(q, m)));
        auto s = sq2(h, c);
        CHECK(s.degree == q + 2);
        CHECK(h.group(q + 2, 2).is_zero(s.coordinates));
      }
    if (x->dimension() >= 2)
      for (long long m : {0, 2, 4}) {
        auto c = h.make_class(2, m, random_element(h.group(2, m)));
        auto z = h.representative(c).reduced(2);
        CHECK(sq2(h, c).coordinates == h.classify(cup(z, z)).coordinates);
      }
  }
  auto x = complex_fixture("circle.facets");
  SimplicialCohomology h(x);
  CHECK_THROWS_AS(sq2(h, h.make_class(0, 3, {1})), UsageError);
}

TEST_CASE("sq2 does not depend on the representative", "[steenrod][property]") {
  for (const auto& [name, x] : small_complexes()) {
    INFO(name);
    SimplicialCohomology h(x);
    for (int q = 2; q + 2 <= x->dimension() + 2 && q <= x->dimension(); ++q)
      for (long long m : {0, 2, 4})
        for (int trial = 0; trial < 3; ++trial) {
          auto c = h.make_class(q, m, random_element(h.group(q, m)));
          auto base = sq2(h, c);
          auto rep = h.representative(c) + coboundary(random_cochain(x, q - 1, m));
          CohomologyClass shifted{q, m, c.coordinates, rep.values()};
          CHECK(sq2(h, shifted).coordinates == base.coordinates);
        }
  }
}

TEST_CASE("sq2 is additive", "[steenrod][property]") {
  for (const auto& [name, x] : small_complexes()) {
    INFO(name);
    SimplicialCohomology h(x);
    for (int q = 2; q <= x->dimension(); ++q)
      for (long long m : {0, 2})
        for (int trial = 0; trial < 4; ++trial) {
          const auto& g = h.group(q, m);
          Vector u = random_element(g), v = random_element(g);
          auto su = sq2(h, h.make_class(q, m, u));
          auto sv = sq2(h, h.make_class(q, m, v));
          auto suv = sq2(h, h.make_class(q, m, g.add(u, v)));
          CHECK(suv.coordinates == h.group(q + 2, 2).add(su.coordinates, sv.coordinates));
        }
  }
}

TEST_CASE("sq2 and cup products commute with pullback", "[steenrod][property]") {
  auto circle = complex_fixture("circle.facets");
  auto rp2 = complex_fixture("rp2.facets");
  auto s2 = complex_fixture("sphere2.facets");
  auto srp2 = suspension(*rp2);
  auto srp2_x_s1 = product(*srp2, *circle);
  auto s2_x_s1 = product(*s2, *circle);
  auto project = [](const ComplexPtr& prod, const ComplexPtr& target, Vertex ny) {
    std::map<Vertex, Vertex> m;
    for (const auto& v : prod->simplices(0)) m[v[0]] = v[0] / ny;
    return SimplicialMap(prod, target, m);
  };
  std::vector<SimplicialMap> maps{project(srp2_x_s1, srp2, 3), project(s2_x_s1, s2, 3),
                                  SimplicialMap(s2, s2, {{0, 1}, {1, 0}, {2, 2}, {3, 3}})};
  for (std::size_t k = 0; k < maps.size(); ++k) {
    const auto& f = maps[k];
    const bool monotone = k < 2;
    SimplicialCohomology hs(f.source()), ht(f.target());
    for (int q = 0; q <= f.target()->dimension(); ++q)
      for (long long m : {0, 2}) {
        for (const auto& coords : enumerate_elements(ht.group(q, m), 1)) {
          auto c = ht.make_class(q, m, coords);
          auto z = ht.representative(c);
          auto pulled = hs.classify(pullback(f, z));
          if (q + 2 <= f.source()->dimension()) {
            auto lhs = hs.classify(pullback(f, ht.representative(sq2(ht, c))));
            CHECK(sq2(hs, pulled).coordinates == lhs.coordinates);
          }
          // Order-preserving maps commute with cup at the cochain level.
          if (monotone && 2 * q <= f.target()->dimension())
            CHECK(pullback(f, cup(z, z)) == cup(pullback(f, z), pullback(f, z)));
        }
      }
  }
}

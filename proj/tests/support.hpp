#pragma once

// Fixture loading, complex generators and random data for the test suites.

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cohomotopy/cohomotopy.hpp"

namespace testing_support {

using namespace cohomotopy;

inline std::string fixture_path(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ComplexPtr complex_fixture(const std::string& name) {
  return std::make_shared<const SimplicialComplex>(parse_complex(read_fixture(name)));
}

inline CohomologyModel model_fixture(const std::string& name) { return load_algebraic_model(read_fixture(name)); }

inline ComplexPtr make_complex(const std::vector<Simplex>& facets) {
  return std::make_shared<const SimplicialComplex>(SimplicialComplex::from_facets(facets));
}

// Staircase triangulation of X x Y; vertex (a, b) gets label a * |Y| + b
// where |Y| is one more than the largest label of Y.
inline ComplexPtr product(const SimplicialComplex& x, const SimplicialComplex& y) {
  const Vertex ny = y.simplices(0).back()[0] + 1;
  std::vector<Simplex> facets;
  for (const auto& s : x.facets())
    for (const auto& t : y.facets()) {
      const std::size_t p = s.size() - 1, q = t.size() - 1;
      // Monotone lattice paths from (0,0) to (p,q), encoded by the positions of the p right-steps.
      std::vector<bool> steps(p + q, false);
      std::fill(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(p), true);
      std::sort(steps.begin(), steps.end());
      do {
        Simplex f;
        std::size_t i = 0, j = 0;
        f.push_back(s[i] * ny + t[j]);
        for (bool right : steps) {
          if (right)
            ++i;
          else
            ++j;
          f.push_back(s[i] * ny + t[j]);
        }
        facets.push_back(std::move(f));
      } while (std::next_permutation(steps.begin(), steps.end()));
    }
  return make_complex(facets);
}

// Join with two cone points.
inline ComplexPtr suspension(const SimplicialComplex& x) {
  const Vertex top = x.simplices(0).back()[0];
  std::vector<Simplex> facets;
  for (const auto& f : x.facets()) {
    Simplex a = f, b = f;
    a.push_back(top + 1);
    b.push_back(top + 2);
    facets.push_back(a);
    facets.push_back(b);
  }
  return make_complex(facets);
}

// Mapping cone of the degree-m map of the circle (m >= 2): an annulus whose
// outer boundary wraps m times around the triangle 0 1 2, capped by a cone
// on the inner 3m-gon. H^2 = Z/m.
inline ComplexPtr pseudo_projective_plane(int m) {
  const int n = 3 * m;
  auto inner = [&](int j) { return static_cast<Vertex>(3 + ((j % n) + n) % n); };
  const Vertex centre = static_cast<Vertex>(3 + n);
  std::vector<Simplex> facets;
  for (int j = 0; j < n; ++j) {
    facets.push_back({static_cast<Vertex>(j % 3), static_cast<Vertex>((j + 1) % 3), inner(j + 1)});
    facets.push_back({static_cast<Vertex>(j % 3), inner(j), inner(j + 1)});
    facets.push_back({inner(j), inner(j + 1), centre});
  }
  return make_complex(facets);
}

// The boundary of the (n+1)-gon, i.e. a circle with n+1 vertices.
inline ComplexPtr polygon(int n) {
  std::vector<Simplex> facets;
  for (int i = 0; i < n; ++i) facets.push_back({static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n)});
  return make_complex(facets);
}

struct NamedComplex {
  std::string name;
  ComplexPtr complex;
};

// Small complexes used by the exhaustive property suites.
inline const std::vector<NamedComplex>& small_complexes() {
  static const std::vector<NamedComplex> all = [] {
    std::vector<NamedComplex> v;
    for (const char* f : {"circle", "sphere2", "sphere3", "rp2", "torus", "s2xs1"})
      v.push_back({f, complex_fixture(std::string(f) + ".facets")});
    v.push_back({"moore3", pseudo_projective_plane(3)});
    v.push_back({"moore4", pseudo_projective_plane(4)});
    v.push_back({"susp_rp2", suspension(*complex_fixture("rp2.facets"))});
    v.push_back({"susp_moore4", suspension(*pseudo_projective_plane(4))});
    v.push_back({"rp2_x_circle", product(*complex_fixture("rp2.facets"), *complex_fixture("circle.facets"))});
    return v;
  }();
  return all;
}

inline const std::vector<std::string>& json_models() {
  static const std::vector<std::string> names{"s2xs1.json",    "s2xt2.json",       "cp2.json",
                                              "s2xs2.json",    "t4.json",          "enriques_type.json",
                                              "split_image.json", "habegger_type.json"};
  return names;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(0x5eed1234abcdULL);
  return g;
}

inline long long uniform(long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng());
}

inline IntMatrix random_matrix(std::size_t rows, std::size_t cols, long long lo = -5, long long hi = 5) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(lo, hi);
  return m;
}

inline Vector random_vector(std::size_t n, long long lo, long long hi) {
  Vector v(n);
  for (auto& x : v) x = uniform(lo, hi);
  return v;
}

inline Cochain random_cochain(const ComplexPtr& x, int q, const Integer& m) {
  const long long hi = m == 0 ? 4 : static_cast<long long>(m) - 1;
  const long long lo = m == 0 ? -4 : 0;
  return Cochain(x, q, m, random_vector(x->count(q), lo, hi));
}

inline Vector random_element(const FgAbGroup& g, long long free_bound = 3) {
  Vector v(g.generator_count());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Integer o = g.generator_order(i);
    v[i] = o == 0 ? Integer(uniform(-free_bound, free_bound)) : Integer(uniform(0, static_cast<long long>(o) - 1));
  }
  return v;
}

// d_k = D_k / D_{k-1} where D_k is the gcd of all k x k minors.
inline Vector invariant_factors_by_minors(const IntMatrix& a) {
  const std::size_t r = a.rows(), c = a.cols();
  Vector out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(r, c); ++k) {
    Integer g = 0;
    std::vector<bool> rs(r, false), cs(c, false);
    std::fill(rs.end() - static_cast<std::ptrdiff_t>(k), rs.end(), true);
    do {
      std::vector<std::size_t> ri;
      for (std::size_t i = 0; i < r; ++i)
        if (rs[i]) ri.push_back(i);
      std::fill(cs.begin(), cs.end(), false);
      std::fill(cs.end() - static_cast<std::ptrdiff_t>(k), cs.end(), true);
      do {
        std::vector<std::size_t> ci;
        for (std::size_t j = 0; j < c; ++j)
          if (cs[j]) ci.push_back(j);
        g = gcd(g, determinant(a.select_rows(ri).select_columns(ci)));
      } while (std::next_permutation(cs.begin(), cs.end()));
    } while (std::next_permutation(rs.begin(), rs.end()));
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

// Z-rank of H^q(X; Z) from ranks of coboundary matrices (rational oracle).
inline std::size_t rank_of(const IntMatrix& a) { return smith_normal_form(a, {false, false, false, false}).rank; }

}  // namespace testing_support

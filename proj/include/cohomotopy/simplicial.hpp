#pragma once

// Finite ordered simplicial complexes, their cochains and coboundaries.
//
// Facet file format: UTF-8 text, '#' starts a comment line, every other
// non-blank line lists the nonnegative integer vertex labels of one facet.
// The complex is the downward closure of the facets. Vertices are ordered by
// label and q-simplices are indexed by their position in the lexicographically
// sorted list of strictly increasing label tuples; every matrix uses that
// indexing.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cohomotopy/abelian.hpp"
#include "cohomotopy/errors.hpp"

namespace cohomotopy {

using Vertex = std::int32_t;
using Simplex = std::vector<Vertex>;

class SimplicialComplex {
 public:
  static SimplicialComplex from_facets(const std::vector<Simplex>& facets) {
    if (facets.empty()) throw UsageError("simplicial complex must have at least one facet");
    std::vector<std::set<Simplex>> faces;
    for (auto f : facets) {
      if (f.empty()) throw UsageError("empty facet");
      std::sort(f.begin(), f.end());
      if (std::adjacent_find(f.begin(), f.end()) != f.end()) throw UsageError("facet repeats a vertex");
      const std::size_t n = f.size();
      if (n > 24) throw UsageError("facet dimension too large");
      if (faces.size() < n) faces.resize(n);
      for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        Simplex s;
        for (std::size_t i = 0; i < n; ++i)
          if (mask & (1u << i)) s.push_back(f[i]);
        faces[s.size() - 1].insert(std::move(s));
      }
    }
    SimplicialComplex x;
    for (auto& level : faces) {
      x.simplices_.emplace_back(level.begin(), level.end());
      auto& index = x.index_.emplace_back();
      for (std::size_t i = 0; i < x.simplices_.back().size(); ++i) index.emplace(x.simplices_.back()[i], i);
    }
    return x;
  }

  int dimension() const noexcept { return static_cast<int>(simplices_.size()) - 1; }
  std::size_t vertex_count() const { return simplices_.empty() ? 0 : simplices_[0].size(); }

  // Number of q-simplices; 0 outside [0, dim].
  std::size_t count(int q) const {
    if (q < 0 || q > dimension()) return 0;
    return simplices_[static_cast<std::size_t>(q)].size();
  }

  const std::vector<Simplex>& simplices(int q) const {
    static const std::vector<Simplex> empty;
    if (q < 0 || q > dimension()) return empty;
    return simplices_[static_cast<std::size_t>(q)];
  }

  std::optional<std::size_t> index_of(const Simplex& s) const {
    const int q = static_cast<int>(s.size()) - 1;
    if (q < 0 || q > dimension()) return std::nullopt;
    const auto& idx = index_[static_cast<std::size_t>(q)];
    auto it = idx.find(s);
    if (it == idx.end()) return std::nullopt;
    return it->second;
  }

  bool contains(const Simplex& s) const { return index_of(s).has_value(); }

  // Simplices that are not a proper face of another simplex.
  std::vector<Simplex> facets() const {
    std::vector<Simplex> out;
    for (int q = 0; q <= dimension(); ++q)
      for (const auto& s : simplices(q)) {
        bool maximal = true;
        if (q < dimension()) {
          for (const auto& v : simplices(0)) {
            if (std::binary_search(s.begin(), s.end(), v[0])) continue;
            Simplex t = s;
            t.insert(std::upper_bound(t.begin(), t.end(), v[0]), v[0]);
            if (contains(t)) {
              maximal = false;
              break;
            }
          }
        }
        if (maximal) out.push_back(s);
      }
    return out;
  }

  long long euler_characteristic() const {
    long long chi = 0;
    for (int q = 0; q <= dimension(); ++q) chi += (q % 2 ? -1 : 1) * static_cast<long long>(count(q));
    return chi;
  }

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.simplices_ == b.simplices_;
  }

 private:
  std::vector<std::vector<Simplex>> simplices_;
  std::vector<std::map<Simplex, std::size_t>> index_;
};

using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

inline SimplicialComplex parse_complex(std::string_view text) {
  std::vector<Simplex> facets;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    Simplex facet;
    while (ls >> tok) {
      if (tok.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(line_no, "malformed vertex label '" + tok + "'");
      if (tok.size() > 10 || std::stoll(tok) > std::numeric_limits<Vertex>::max())
        throw ParseError(line_no, "vertex label out of range: " + tok);
      facet.push_back(static_cast<Vertex>(std::stoll(tok)));
    }
    std::sort(facet.begin(), facet.end());
    if (std::adjacent_find(facet.begin(), facet.end()) != facet.end())
      throw ParseError(line_no, "facet repeats a vertex");
    if (facet.size() > 24) throw ParseError(line_no, "facet has too many vertices");
    facets.push_back(std::move(facet));
  }
  if (facets.empty()) throw ParseError(line_no, "empty complex (no facets)");
  return SimplicialComplex::from_facets(facets);
}

inline std::string serialize_complex(const SimplicialComplex& x) {
  std::ostringstream os;
  os << "# simplicial complex: dimension " << x.dimension() << ", " << x.vertex_count() << " vertices\n";
  for (const auto& f : x.facets()) {
    for (std::size_t i = 0; i < f.size(); ++i) os << (i ? " " : "") << f[i];
    os << '\n';
  }
  return os.str();
}

// Matrix of delta: C^q -> C^{q+1}; entry (tau, sigma) is (-1)^i when sigma is
// tau with its i-th vertex removed. Entries are reduced into [0, m) for m > 0.
inline IntMatrix coboundary(const SimplicialComplex& x, int q, const Integer& modulus = 0) {
  if (q < 0 || q > x.dimension()) throw UsageError("coboundary: degree " + std::to_string(q) + " out of range");
  IntMatrix d(x.count(q + 1), x.count(q));
  const auto& upper = x.simplices(q + 1);
  for (std::size_t r = 0; r < upper.size(); ++r) {
    const Simplex& tau = upper[r];
    for (std::size_t i = 0; i < tau.size(); ++i) {
      Simplex face = tau;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
      d(r, *x.index_of(face)) = (i % 2 == 0) ? 1 : -1;
    }
  }
  return d.reduced(modulus);
}

// A q-cochain with coefficients in Z (modulus 0) or Z/m.
class Cochain {
 public:
  Cochain(ComplexPtr complex, int degree, Integer modulus, Vector values)
      : complex_(std::move(complex)), degree_(degree), modulus_(std::move(modulus)), values_(std::move(values)) {
    if (modulus_ < 0) throw UsageError("Cochain: negative modulus");
    if (values_.size() != complex_->count(degree_)) throw UsageError("Cochain: value count does not match simplices");
    if (modulus_ != 0)
      for (auto& v : values_) v = floor_mod(v, modulus_);
  }

  static Cochain zero(ComplexPtr complex, int degree, Integer modulus = 0) {
    const std::size_t n = complex->count(degree);
    return Cochain(std::move(complex), degree, std::move(modulus), Vector(n));
  }

  static Cochain constant(ComplexPtr complex, int degree, const Integer& value, Integer modulus = 0) {
    const std::size_t n = complex->count(degree);
    return Cochain(std::move(complex), degree, std::move(modulus), Vector(n, value));
  }

  const ComplexPtr& complex() const noexcept { return complex_; }
  int degree() const noexcept { return degree_; }
  const Integer& modulus() const noexcept { return modulus_; }
  const Vector& values() const noexcept { return values_; }
  const Integer& operator[](std::size_t i) const { return values_[i]; }

  // Value on a simplex given by its sorted vertex list; 0 if absent.
  Integer value(const Simplex& s) const {
    auto i = complex_->index_of(s);
    return i ? values_[*i] : Integer(0);
  }

  Cochain reduced(const Integer& m) const { return Cochain(complex_, degree_, m, values_); }

  bool is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](const Integer& v) { return v == 0; });
  }

  Cochain operator+(const Cochain& o) const {
    check_compatible(o);
    Vector v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] + o.values_[i];
    return Cochain(complex_, degree_, modulus_, std::move(v));
  }

  Cochain operator-(const Cochain& o) const { return *this + o * Integer(-1); }

  Cochain operator*(const Integer& k) const {
    Vector v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] * k;
    return Cochain(complex_, degree_, modulus_, std::move(v));
  }

  friend bool operator==(const Cochain& a, const Cochain& b) {
    return a.complex_.get() == b.complex_.get() && a.degree_ == b.degree_ && a.modulus_ == b.modulus_ &&
           a.values_ == b.values_;
  }

 private:
  void check_compatible(const Cochain& o) const {
    if (o.complex_.get() != complex_.get() || o.degree_ != degree_ || o.modulus_ != modulus_)
      throw UsageError("Cochain: operands live on different complexes, degrees or moduli");
  }

  ComplexPtr complex_;
  int degree_;
  Integer modulus_;
  Vector values_;
};

// delta c, with the same coefficients.
inline Cochain coboundary(const Cochain& c) {
  const auto& x = *c.complex();
  const int q = c.degree();
  const auto& upper = x.simplices(q + 1);
  Vector out(upper.size());
  for (std::size_t r = 0; r < upper.size(); ++r) {
    const Simplex& tau = upper[r];
    Integer acc = 0;
    for (std::size_t i = 0; i < tau.size(); ++i) {
      Simplex face = tau;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
      const Integer& v = c[*x.index_of(face)];
      if (i % 2 == 0)
        acc += v;
      else
        acc -= v;
    }
    out[r] = std::move(acc);
  }
  return Cochain(c.complex(), q + 1, c.modulus(), std::move(out));
}

// Vertex map between complexes that sends simplices to simplices.
class SimplicialMap {
 public:
  SimplicialMap(ComplexPtr source, ComplexPtr target, std::map<Vertex, Vertex> vertex_map)
      : source_(std::move(source)), target_(std::move(target)), map_(std::move(vertex_map)) {
    for (const auto& v : source_->simplices(0))
      if (!map_.count(v[0])) throw UsageError("SimplicialMap: vertex " + std::to_string(v[0]) + " has no image");
    for (const auto& f : source_->facets()) {
      Simplex img = image_set(f);
      if (!target_->contains(img)) throw UsageError("SimplicialMap: vertex map is not simplicial");
    }
  }

  const ComplexPtr& source() const noexcept { return source_; }
  const ComplexPtr& target() const noexcept { return target_; }
  Vertex operator()(Vertex v) const { return map_.at(v); }

  Simplex image_set(const Simplex& s) const {
    Simplex img;
    for (Vertex v : s) img.push_back(map_.at(v));
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    return img;
  }

 private:
  ComplexPtr source_;
  ComplexPtr target_;
  std::map<Vertex, Vertex> map_;
};

// (f^* c)(sigma) = sign * c(f(sigma)); zero where f collapses sigma.
inline Cochain pullback(const SimplicialMap& f, const Cochain& c) {
  if (c.complex().get() != f.target().get()) throw UsageError("pullback: cochain is not on the map's target");
  const auto& x = *f.source();
  const int q = c.degree();
  const auto& simplices = x.simplices(q);
  Vector out(simplices.size());
  for (std::size_t i = 0; i < simplices.size(); ++i) {
    std::vector<Vertex> img;
    for (Vertex v : simplices[i]) img.push_back(f(v));
    // Sign of the sorting permutation; repeated vertices collapse the simplex.
    int sign = 1;
    bool degenerate = false;
    for (std::size_t a = 0; a < img.size() && !degenerate; ++a)
      for (std::size_t b = a + 1; b < img.size(); ++b) {
        if (img[a] == img[b]) {
          degenerate = true;
          break;
        }
        if (img[a] > img[b]) sign = -sign;
      }
    if (degenerate) continue;
    std::sort(img.begin(), img.end());
    out[i] = c.value(img) * sign;
  }
  return Cochain(f.source(), q, c.modulus(), std::move(out));
}

}  // namespace cohomotopy

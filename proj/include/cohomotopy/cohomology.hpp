#pragma once

// Simplicial cohomology H^q(X; Z/m) (m = 0 for Z) with explicit cocycle
// representatives.
//
// Write U delta_q V = S for the Smith form of delta_q and y = V^{-1} x. A
// cochain x is a cocycle mod m iff y_i == 0 mod s_i for i < rank, where
// s_i = m / gcd(d_i, m) (over Z: y_i == 0). The cocycle lattice therefore has
// basis s_i V e_i and the group is the cokernel of the coboundary image
// written in that basis, plus m times the lattice when m > 0.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cohomotopy/abelian.hpp"
#include "cohomotopy/errors.hpp"
#include "cohomotopy/simplicial.hpp"

namespace cohomotopy {

struct CohomologyClass {
  int degree = 0;
  Integer modulus = 0;
  Vector coordinates;
  // Integer lift of a cocycle, when the class came from a complex.
  std::optional<Vector> representative;
};

inline std::string coefficients_name(const Integer& m) { return m == 0 ? "Z" : "Z/" + m.str(); }

// "Z" -> 0, "Z/m" -> m (m >= 2).
inline Integer parse_coefficients(const std::string& s) {
  if (s == "Z") return 0;
  if (s.size() > 2 && s.compare(0, 2, "Z/") == 0) {
    const std::string digits = s.substr(2);
    if (digits.find_first_not_of("0123456789") == std::string::npos && digits.size() < 30) {
      Integer m(digits);
      if (m >= 2) return m;
    }
  }
  throw UsageError("coefficients must be Z or Z/m with m >= 2, got '" + s + "'");
}

namespace detail {

inline IntMatrix coboundary_or_zero(const SimplicialComplex& x, int q) {
  if (q < 0 || q > x.dimension()) return IntMatrix(x.count(q + 1), x.count(q));
  return coboundary(x, q);
}

struct DegreeSnf {
  IntMatrix V;
  IntMatrix V_inverse;
  Vector diagonal;
  std::size_t rank = 0;
  IntMatrix lower;  // V^{-1} delta_{q-1}
};

}  // namespace detail

// One group H^q(X; Z/m) together with the map to and from cocycles.
class CochainCohomology {
 public:
  CochainCohomology(ComplexPtr x, int q, Integer m, std::shared_ptr<const detail::DegreeSnf> snf)
      : complex_(std::move(x)), degree_(q), modulus_(std::move(m)), snf_(std::move(snf)) {
    const std::size_t n = complex_->count(q);
    scale_.assign(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
      if (i < snf_->rank) {
        if (modulus_ == 0) continue;
        const Integer g = gcd(snf_->diagonal[i], modulus_);
        scale_[i] = modulus_ / g;
        if (g == 1) continue;
      }
      index_.push_back(i);
    }
    std::vector<Vector> cols;
    const IntMatrix& low = snf_->lower;
    for (std::size_t j = 0; j < low.cols(); ++j) {
      Vector c(index_.size());
      bool nonzero = false;
      for (std::size_t a = 0; a < index_.size(); ++a) {
        const std::size_t i = index_[a];
        c[a] = low(i, j) / scale_[i];
        if (c[a] != 0) nonzero = true;
      }
      if (nonzero) cols.push_back(std::move(c));
    }
    if (modulus_ != 0)
      for (std::size_t a = 0; a < index_.size(); ++a) {
        Vector c(index_.size());
        c[a] = modulus_ / scale_[index_[a]];
        cols.push_back(std::move(c));
      }
    group_ = std::make_shared<const FgAbGroup>(cokernel(IntMatrix::from_columns(index_.size(), cols)));
  }

  const ComplexPtr& complex() const noexcept { return complex_; }
  int degree() const noexcept { return degree_; }
  const Integer& modulus() const noexcept { return modulus_; }
  const FgAbGroup& group() const noexcept { return *group_; }
  const std::shared_ptr<const FgAbGroup>& group_ptr() const noexcept { return group_; }

  bool is_cocycle(const Vector& x) const {
    check_length(x);
    const Vector y = snf_->V_inverse * x;
    for (std::size_t i = 0; i < snf_->rank; ++i) {
      if (modulus_ == 0 ? y[i] != 0 : y[i] % scale_[i] != 0) return false;
    }
    return true;
  }

  // Canonical coordinates of the class of an (integer lift of a) cocycle.
  Vector classify(const Vector& x) const {
    check_length(x);
    const Vector y = snf_->V_inverse * x;
    for (std::size_t i = 0; i < snf_->rank; ++i)
      if (modulus_ == 0 ? y[i] != 0 : y[i] % scale_[i] != 0)
        throw UsageError("cochain of degree " + std::to_string(degree_) + " is not a cocycle mod " +
                         modulus_.str());
    Vector w(index_.size());
    for (std::size_t a = 0; a < index_.size(); ++a) w[a] = y[index_[a]] / scale_[index_[a]];
    return group_->canonical(w);
  }

  // A cocycle in the class with the given coordinates (reduced into [0, m)).
  Vector representative(const Vector& coords) const {
    const Vector w = group_->ambient(group_->reduce(coords));
    Vector y(complex_->count(degree_));
    for (std::size_t a = 0; a < index_.size(); ++a) y[index_[a]] = w[a] * scale_[index_[a]];
    Vector x = snf_->V * y;
    if (modulus_ != 0)
      for (auto& v : x) v = floor_mod(v, modulus_);
    return x;
  }

 private:
  void check_length(const Vector& x) const {
    if (x.size() != complex_->count(degree_)) throw UsageError("cochain has the wrong number of values");
  }

  ComplexPtr complex_;
  int degree_;
  Integer modulus_;
  std::shared_ptr<const detail::DegreeSnf> snf_;
  std::vector<std::size_t> index_;
  Vector scale_;
  std::shared_ptr<const FgAbGroup> group_;
};

class SimplicialCohomology {
 public:
  explicit SimplicialCohomology(ComplexPtr x) : complex_(std::move(x)) {
    if (!complex_) throw UsageError("SimplicialCohomology: null complex");
  }

  SimplicialCohomology(const SimplicialCohomology&) = delete;
  SimplicialCohomology& operator=(const SimplicialCohomology&) = delete;

  const ComplexPtr& complex() const noexcept { return complex_; }

  std::shared_ptr<const CochainCohomology> at(int q, const Integer& m = 0) const {
    if (m < 0 || m == 1) throw UsageError("coefficient modulus must be 0 or at least 2");
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(q, m);
    auto it = groups_.find(key);
    if (it != groups_.end()) return it->second;
    auto h = std::make_shared<const CochainCohomology>(complex_, q, m, degree_snf(q));
    groups_.emplace(key, h);
    return h;
  }

  const FgAbGroup& group(int q, const Integer& m = 0) const { return at(q, m)->group(); }
  std::shared_ptr<const FgAbGroup> group_ptr(int q, const Integer& m = 0) const { return at(q, m)->group_ptr(); }

  CohomologyClass classify(const Cochain& z) const {
    if (z.complex().get() != complex_.get()) throw UsageError("classify: cochain lives on another complex");
    return CohomologyClass{z.degree(), z.modulus(), at(z.degree(), z.modulus())->classify(z.values()), z.values()};
  }

  CohomologyClass make_class(int q, const Integer& m, const Vector& coords) const {
    auto h = at(q, m);
    Vector c = h->group().reduce(coords);
    Vector rep = h->representative(c);
    return CohomologyClass{q, m, std::move(c), std::move(rep)};
  }

  Cochain representative(const CohomologyClass& c) const {
    Vector rep = c.representative ? *c.representative : at(c.degree, c.modulus)->representative(c.coordinates);
    return Cochain(complex_, c.degree, c.modulus, std::move(rep));
  }

  // Coefficient change Z/from -> Z/to (to divides from; from = 0 means Z).
  CohomologyClass reduce(const CohomologyClass& c, const Integer& to) const {
    if (to <= 1 || (c.modulus != 0 && c.modulus % to != 0))
      throw UsageError("reduce: cannot change coefficients from " + coefficients_name(c.modulus) + " to " +
                       coefficients_name(to));
    return classify(representative(c).reduced(to));
  }

  // The Bockstein of 0 -> Z -> Z -> Z/m -> 0 applied to the class of an
  // integer lift z of a mod-m cocycle: delta z = m w, result [w].
  CohomologyClass bockstein_of_lift(int q, const Integer& m, const Vector& lift) const {
    if (m < 2) throw UsageError("bockstein: modulus must be at least 2");
    if (!at(q, m)->is_cocycle(lift)) throw UsageError("bockstein: not a cocycle mod " + m.str());
    Cochain z(complex_, q, 0, lift);
    Cochain dz = coboundary(z);
    Vector w(dz.values().size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (dz[i] % m != 0) throw ConsistencyError("bockstein: coboundary of lift not divisible");
      w[i] = dz[i] / m;
    }
    return classify(Cochain(complex_, q + 1, 0, std::move(w)));
  }

  CohomologyClass bockstein(const CohomologyClass& c) const {
    Cochain rep = representative(c);
    return bockstein_of_lift(c.degree, c.modulus, rep.values());
  }

 private:
  std::shared_ptr<const detail::DegreeSnf> degree_snf(int q) const {
    auto it = snf_.find(q);
    if (it != snf_.end()) return it->second;
    const auto& x = *complex_;
    auto d = std::make_shared<detail::DegreeSnf>();
    auto snf = smith_normal_form(detail::coboundary_or_zero(x, q), {false, false, true, true});
    d->V = std::move(snf.V);
    d->V_inverse = std::move(snf.V_inverse);
    d->diagonal = snf.diagonal();
    d->rank = snf.rank;
    d->lower = d->V_inverse * detail::coboundary_or_zero(x, q - 1);
    snf_.emplace(q, d);
    return d;
  }

  ComplexPtr complex_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::shared_ptr<const detail::DegreeSnf>> snf_;
  mutable std::map<std::pair<int, Integer>, std::shared_ptr<const CochainCohomology>> groups_;
};

}  // namespace cohomotopy

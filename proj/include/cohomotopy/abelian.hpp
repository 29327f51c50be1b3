#pragma once

// Exact integer linear algebra: matrices over Z, Smith normal form, finitely
// generated abelian groups given by presentations, and homomorphisms between
// them. All arithmetic is arbitrary precision.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cohomotopy/errors.hpp"

namespace cohomotopy {

using Integer = boost::multiprecision::cpp_int;
using Vector = std::vector<Integer>;

inline Integer abs_value(const Integer& a) { return a < 0 ? Integer(-a) : a; }

// Remainder in [0, |m|).
inline Integer floor_mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += abs_value(m);
  return r;
}

struct Bezout {
  Integer g;  // gcd(a, b) >= 0
  Integer s;  // s*a + t*b == g
  Integer t;
};

inline Bezout extended_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b;
  Integer old_s = 1, s = 0;
  Integer old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

inline Integer gcd(const Integer& a, const Integer& b) { return extended_gcd(a, b).g; }

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs_value(a / gcd(a, b) * b);
}

inline std::string to_string(const Integer& a) { return a.str(); }

inline std::string to_string(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].str();
  }
  return s + ")";
}

// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw UsageError("IntMatrix: ragged initializer");
      for (long long x : row) data_.emplace_back(x);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix diagonal(const Vector& d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  static IntMatrix from_columns(std::size_t rows, const std::vector<Vector>& columns) {
    IntMatrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw UsageError("IntMatrix::from_columns: length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  static IntMatrix from_rows(std::size_t cols, const std::vector<Vector>& rows) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw UsageError("IntMatrix::from_rows: length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector row(std::size_t i) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  Vector column(std::size_t j) const {
    Vector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntMatrix select_rows(const std::vector<std::size_t>& idx) const {
    IntMatrix m(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
    return m;
  }

  IntMatrix select_columns(const std::vector<std::size_t>& idx) const {
    IntMatrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
    return m;
  }

  // [this | other]
  IntMatrix hcat(const IntMatrix& other) const {
    if (other.rows_ != rows_) throw UsageError("IntMatrix::hcat: row count mismatch");
    IntMatrix m(rows_, cols_ + other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
      for (std::size_t j = 0; j < other.cols_; ++j) m(i, cols_ + j) = other(i, j);
    }
    return m;
  }

  IntMatrix vcat(const IntMatrix& other) const {
    if (other.cols_ != cols_) throw UsageError("IntMatrix::vcat: column count mismatch");
    IntMatrix m(rows_ + other.rows_, cols_);
    std::copy(data_.begin(), data_.end(), m.data_.begin());
    std::copy(other.data_.begin(), other.data_.end(),
              m.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
    return m;
  }

  IntMatrix operator*(const IntMatrix& b) const {
    if (cols_ != b.rows_) throw UsageError("IntMatrix: product dimension mismatch");
    std::vector<std::vector<std::size_t>> b_nz(b.rows_);
    for (std::size_t k = 0; k < b.rows_; ++k)
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (b(k, j) != 0) b_nz[k].push_back(j);
    IntMatrix c(rows_, b.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Integer& a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j : b_nz[k]) c(i, j) += a * b(k, j);
      }
    return c;
  }

  Vector operator*(const Vector& v) const {
    if (cols_ != v.size()) throw UsageError("IntMatrix: vector dimension mismatch");
    Vector out(rows_);
    for (std::size_t j = 0; j < cols_; ++j) {
      if (v[j] == 0) continue;
      for (std::size_t i = 0; i < rows_; ++i) {
        const Integer& a = (*this)(i, j);
        if (a != 0) out[i] += a * v[j];
      }
    }
    return out;
  }

  IntMatrix operator*(const Integer& k) const {
    IntMatrix m = *this;
    for (auto& x : m.data_) x *= k;
    return m;
  }

  IntMatrix operator+(const IntMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw UsageError("IntMatrix: sum dimension mismatch");
    IntMatrix m = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] += b.data_[i];
    return m;
  }

  // Entries reduced into [0, m); m == 0 leaves the matrix unchanged.
  IntMatrix reduced(const Integer& m) const {
    if (m == 0) return *this;
    IntMatrix r = *this;
    for (auto& x : r.data_) x = floor_mod(x, m);
    return r;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
  }

  bool is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (i != j && (*this)(i, j) != 0) return false;
    return true;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << "[";
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? "; " : "");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m(i, j);
    }
    return os << "]";
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

inline IntMatrix hcat(const IntMatrix& a, const IntMatrix& b) { return a.hcat(b); }

// Determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(IntMatrix a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw UsageError("determinant: matrix not square");
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Smith normal form

struct SnfOptions {
  bool left = true;
  bool left_inverse = true;
  bool right = true;
  bool right_inverse = true;
};

// U * A * V == S. The inverse transforms are filled only when requested.
struct SnfResult {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;
  IntMatrix U_inverse;
  IntMatrix V_inverse;
  std::size_t rank = 0;

  Vector diagonal() const {
    Vector d(rank);
    for (std::size_t i = 0; i < rank; ++i) d[i] = S(i, i);
    return d;
  }
};

namespace detail {

class SnfWorker {
 public:
  SnfWorker(const IntMatrix& a, SnfOptions opts) : a_(a), opts_(opts) {
    const std::size_t m = a.rows(), n = a.cols();
    if (opts_.left) u_ = IntMatrix::identity(m);
    if (opts_.left_inverse) ui_ = IntMatrix::identity(m);
    if (opts_.right) v_ = IntMatrix::identity(n);
    if (opts_.right_inverse) vi_ = IntMatrix::identity(n);
  }

  SnfResult run() {
    diagonalize();
    normalize_signs();
    enforce_divisibility();
    SnfResult r;
    r.S = std::move(a_);
    r.U = std::move(u_);
    r.V = std::move(v_);
    r.U_inverse = std::move(ui_);
    r.V_inverse = std::move(vi_);
    r.rank = rank_;
    return r;
  }

 private:
  static std::vector<std::size_t> nonzero_columns(const IntMatrix& m, std::size_t row) {
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(row, j) != 0) nz.push_back(j);
    return nz;
  }

  // row dst -= q * row src
  void row_sub(std::size_t dst, std::size_t src, const Integer& q, const std::vector<std::size_t>& a_nz,
               const std::vector<std::size_t>& u_nz) {
    for (std::size_t j : a_nz) a_(dst, j) -= q * a_(src, j);
    if (opts_.left)
      for (std::size_t j : u_nz) u_(dst, j) -= q * u_(src, j);
    if (opts_.left_inverse)
      for (std::size_t i = 0; i < ui_.rows(); ++i)
        if (ui_(i, dst) != 0) ui_(i, src) += q * ui_(i, dst);
  }

  // col dst -= q * col src
  void col_sub(std::size_t dst, std::size_t src, const Integer& q, const std::vector<std::size_t>& a_nz) {
    for (std::size_t i : a_nz) a_(i, dst) -= q * a_(i, src);
    if (opts_.right)
      for (std::size_t i = 0; i < v_.rows(); ++i)
        if (v_(i, src) != 0) v_(i, dst) -= q * v_(i, src);
    if (opts_.right_inverse) {
      const std::size_t n = vi_.cols();
      for (std::size_t j = 0; j < n; ++j)
        if (vi_(dst, j) != 0) vi_(src, j) += q * vi_(dst, j);
    }
  }

  void swap_rows(std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < a_.cols(); ++j) std::swap(a_(i, j), a_(k, j));
    if (opts_.left)
      for (std::size_t j = 0; j < u_.cols(); ++j) std::swap(u_(i, j), u_(k, j));
    if (opts_.left_inverse)
      for (std::size_t r = 0; r < ui_.rows(); ++r) std::swap(ui_(r, i), ui_(r, k));
  }

  void swap_cols(std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t r = 0; r < a_.rows(); ++r) std::swap(a_(r, i), a_(r, k));
    if (opts_.right)
      for (std::size_t r = 0; r < v_.rows(); ++r) std::swap(v_(r, i), v_(r, k));
    if (opts_.right_inverse)
      for (std::size_t j = 0; j < vi_.cols(); ++j) std::swap(vi_(i, j), vi_(k, j));
  }

  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < a_.cols(); ++j) a_(i, j) = -a_(i, j);
    if (opts_.left)
      for (std::size_t j = 0; j < u_.cols(); ++j) u_(i, j) = -u_(i, j);
    if (opts_.left_inverse)
      for (std::size_t r = 0; r < ui_.rows(); ++r) ui_(r, i) = -ui_(r, i);
  }

  // Smallest nonzero |entry| in the trailing block; stops early on a unit.
  bool find_pivot(std::size_t k, std::size_t& pi, std::size_t& pj) const {
    bool found = false;
    Integer best;
    for (std::size_t i = k; i < a_.rows(); ++i)
      for (std::size_t j = k; j < a_.cols(); ++j) {
        const Integer& x = a_(i, j);
        if (x == 0) continue;
        Integer ax = abs_value(x);
        if (!found || ax < best) {
          best = ax;
          pi = i;
          pj = j;
          found = true;
          if (best == 1) return true;
        }
      }
    return found;
  }

  void diagonalize() {
    const std::size_t m = a_.rows(), n = a_.cols();
    const std::size_t lim = std::min(m, n);
    for (std::size_t k = 0; k < lim; ++k) {
      std::size_t pi = 0, pj = 0;
      if (!find_pivot(k, pi, pj)) break;
      swap_rows(k, pi);
      swap_cols(k, pj);
      for (;;) {
        bool clean = true;
        {
          auto a_nz = nonzero_columns(a_, k);
          std::vector<std::size_t> u_nz;
          if (opts_.left) u_nz = nonzero_columns(u_, k);
          for (std::size_t i = k + 1; i < m; ++i) {
            if (a_(i, k) == 0) continue;
            Integer q = a_(i, k) / a_(k, k);
            if (q != 0) row_sub(i, k, q, a_nz, u_nz);
            if (a_(i, k) != 0) clean = false;
          }
        }
        if (!clean) {
          std::size_t best = k;
          for (std::size_t i = k + 1; i < m; ++i)
            if (a_(i, k) != 0 && abs_value(a_(i, k)) < abs_value(a_(best, k))) best = i;
          swap_rows(k, best);
          continue;
        }
        {
          std::vector<std::size_t> a_nz;
          for (std::size_t i = k; i < m; ++i)
            if (a_(i, k) != 0) a_nz.push_back(i);
          for (std::size_t j = k + 1; j < n; ++j) {
            if (a_(k, j) == 0) continue;
            Integer q = a_(k, j) / a_(k, k);
            if (q != 0) col_sub(j, k, q, a_nz);
            if (a_(k, j) != 0) clean = false;
          }
        }
        if (!clean) {
          std::size_t best = k;
          for (std::size_t j = k + 1; j < n; ++j)
            if (a_(k, j) != 0 && abs_value(a_(k, j)) < abs_value(a_(k, best))) best = j;
          swap_cols(k, best);
          continue;
        }
        break;
      }
      rank_ = k + 1;
    }
  }

  void normalize_signs() {
    for (std::size_t i = 0; i < rank_; ++i)
      if (a_(i, i) < 0) negate_row(i);
  }

  // Replace diag(a, b) at positions (i, j) by diag(gcd, lcm).
  void gcd_lcm(std::size_t i, std::size_t j) {
    const Integer a = a_(i, i), b = a_(j, j);
    if (b % a == 0) return;
    auto [g, s, t] = extended_gcd(a, b);
    const Integer ag = a / g, bg = b / g;
    if (opts_.left)
      for (std::size_t c = 0; c < u_.cols(); ++c) {
        Integer x = u_(i, c), y = u_(j, c);
        u_(i, c) = s * x + t * y;
        u_(j, c) = -bg * x + ag * y;
      }
    if (opts_.left_inverse)
      for (std::size_t r = 0; r < ui_.rows(); ++r) {
        Integer x = ui_(r, i), y = ui_(r, j);
        ui_(r, i) = ag * x + bg * y;
        ui_(r, j) = -t * x + s * y;
      }
    if (opts_.right)
      for (std::size_t r = 0; r < v_.rows(); ++r) {
        Integer x = v_(r, i), y = v_(r, j);
        v_(r, i) = x + y;
        v_(r, j) = -t * bg * x + s * ag * y;
      }
    if (opts_.right_inverse)
      for (std::size_t c = 0; c < vi_.cols(); ++c) {
        Integer x = vi_(i, c), y = vi_(j, c);
        vi_(i, c) = s * ag * x + t * bg * y;
        vi_(j, c) = -x + y;
      }
    a_(i, i) = g;
    a_(j, j) = a * bg;
  }

  void enforce_divisibility() {
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t j = i + 1; j < rank_; ++j) gcd_lcm(i, j);
  }

  IntMatrix a_, u_, ui_, v_, vi_;
  SnfOptions opts_;
  std::size_t rank_ = 0;
};

}  // namespace detail

inline SnfResult smith_normal_form(const IntMatrix& a, SnfOptions opts = {}) {
  return detail::SnfWorker(a, opts).run();
}

// Nonzero invariant factors of A, in divisibility order.
inline Vector invariant_factors(const IntMatrix& a) {
  return smith_normal_form(a, {false, false, false, false}).diagonal();
}

// Solve A x == b (mod modulus); modulus 0 means over Z.
inline std::optional<Vector> solve_linear(const IntMatrix& a, const Vector& b, const Integer& modulus = 0) {
  if (b.size() != a.rows()) throw UsageError("solve_linear: right-hand side has wrong length");
  if (modulus < 0) throw UsageError("solve_linear: negative modulus");
  if (modulus != 0) {
    IntMatrix ext = a.hcat(IntMatrix::identity(a.rows()) * modulus);
    auto x = solve_linear(ext, b, 0);
    if (!x) return std::nullopt;
    Vector out(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] = floor_mod((*x)[j], modulus);
    return out;
  }
  auto snf = smith_normal_form(a, {true, false, true, false});
  Vector c = snf.U * b;
  Vector z(a.cols());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < snf.rank) {
      const Integer& d = snf.S(i, i);
      if (c[i] % d != 0) return std::nullopt;
      z[i] = c[i] / d;
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return snf.V * z;
}

// Basis (as columns) of the integer kernel {x : A x == 0}.
inline IntMatrix kernel_basis(const IntMatrix& a) {
  auto snf = smith_normal_form(a, {false, false, true, false});
  std::vector<std::size_t> idx;
  for (std::size_t j = snf.rank; j < a.cols(); ++j) idx.push_back(j);
  return snf.V.select_columns(idx);
}

// ---------------------------------------------------------------------------
// Finitely generated abelian groups

// Z^n / colspan(relations), with a chosen generating set. Canonical
// coordinates list the free generators first, then the torsion generators in
// divisibility order; torsion coordinate i is kept in [0, torsion[i]).
class FgAbGroup {
 public:
  FgAbGroup() = default;

  static FgAbGroup cokernel(const IntMatrix& relations) {
    FgAbGroup g;
    const std::size_t n = relations.rows();
    g.relations_ = relations;
    auto snf = smith_normal_form(relations, {true, true, false, false});
    std::vector<std::size_t> keep;
    for (std::size_t i = snf.rank; i < n; ++i) keep.push_back(i);
    g.free_rank_ = keep.size();
    for (std::size_t i = 0; i < snf.rank; ++i) {
      if (snf.S(i, i) == 1) continue;
      keep.push_back(i);
      g.torsion_.push_back(snf.S(i, i));
    }
    g.to_canonical_ = snf.U.select_rows(keep);
    g.basis_map_ = snf.U_inverse.select_columns(keep);
    return g;
  }

  // Z^free_rank (+) Z/t_1 (+) ... with t_i > 1 and t_i | t_{i+1}.
  static FgAbGroup from_invariants(std::size_t free_rank, const Vector& torsion) {
    for (std::size_t i = 0; i < torsion.size(); ++i) {
      if (torsion[i] <= 1) throw UsageError("FgAbGroup: invariant factor must exceed 1");
      if (i + 1 < torsion.size() && torsion[i + 1] % torsion[i] != 0)
        throw UsageError("FgAbGroup: invariant factors must divide successively");
    }
    const std::size_t k = free_rank + torsion.size();
    FgAbGroup g;
    g.relations_ = IntMatrix(k, torsion.size());
    for (std::size_t i = 0; i < torsion.size(); ++i) g.relations_(free_rank + i, i) = torsion[i];
    g.free_rank_ = free_rank;
    g.torsion_ = torsion;
    g.to_canonical_ = IntMatrix::identity(k);
    g.basis_map_ = IntMatrix::identity(k);
    return g;
  }

  static FgAbGroup free(std::size_t rank) { return from_invariants(rank, {}); }
  static FgAbGroup trivial() { return from_invariants(0, {}); }

  // The abstract group with this group's invariants, on canonical coordinates.
  FgAbGroup canonical_form() const { return from_invariants(free_rank_, torsion_); }

  std::size_t ambient_dimension() const noexcept { return relations_.rows(); }
  const IntMatrix& relations() const noexcept { return relations_; }
  // Columns: the generators in ambient coordinates.
  const IntMatrix& basis_map() const noexcept { return basis_map_; }
  // Ambient coordinates -> (unreduced) canonical coordinates.
  const IntMatrix& coordinate_map() const noexcept { return to_canonical_; }

  std::size_t free_rank() const noexcept { return free_rank_; }
  const Vector& torsion() const noexcept { return torsion_; }
  std::size_t generator_count() const noexcept { return free_rank_ + torsion_.size(); }

  // 0 for a free generator.
  Integer generator_order(std::size_t i) const { return i < free_rank_ ? Integer(0) : torsion_[i - free_rank_]; }

  bool is_trivial() const noexcept { return generator_count() == 0; }
  bool is_finite() const noexcept { return free_rank_ == 0; }

  std::optional<Integer> order() const {
    if (!is_finite()) return std::nullopt;
    Integer o = 1;
    for (const auto& t : torsion_) o *= t;
    return o;
  }

  Vector reduce(Vector coords) const {
    check_length(coords);
    for (std::size_t i = 0; i < torsion_.size(); ++i)
      coords[free_rank_ + i] = floor_mod(coords[free_rank_ + i], torsion_[i]);
    return coords;
  }

  Vector canonical(const Vector& ambient) const {
    if (ambient.size() != ambient_dimension()) throw UsageError("FgAbGroup: ambient vector has wrong length");
    return reduce(to_canonical_ * ambient);
  }

  Vector ambient(const Vector& coords) const {
    check_length(coords);
    return basis_map_ * coords;
  }

  Vector zero() const { return Vector(generator_count()); }

  Vector generator(std::size_t i) const {
    Vector v = zero();
    v.at(i) = 1;
    return v;
  }

  bool is_zero(const Vector& x) const {
    auto r = reduce(x);
    return std::all_of(r.begin(), r.end(), [](const Integer& c) { return c == 0; });
  }

  Vector add(const Vector& a, const Vector& b) const {
    check_length(a);
    check_length(b);
    Vector s(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
    return reduce(std::move(s));
  }

  Vector scale(const Integer& k, const Vector& a) const {
    check_length(a);
    Vector s(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) s[i] = k * a[i];
    return reduce(std::move(s));
  }

  Vector negate(const Vector& a) const { return scale(-1, a); }

  // Order of an element; 0 when infinite.
  Integer element_order(const Vector& x) const {
    auto r = reduce(x);
    Integer o = 1;
    for (std::size_t i = 0; i < free_rank_; ++i)
      if (r[i] != 0) return 0;
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
      const Integer& c = r[free_rank_ + i];
      if (c != 0) o = lcm(o, torsion_[i] / gcd(c, torsion_[i]));
    }
    return o;
  }

  // Exponent of the torsion subgroup (1 if torsion free).
  Integer torsion_exponent() const { return torsion_.empty() ? Integer(1) : torsion_.back(); }

  bool isomorphic(const FgAbGroup& other) const {
    return free_rank_ == other.free_rank_ && torsion_ == other.torsion_;
  }

  // "Z^r ⊕ Z/d1 ⊕ ... ⊕ Z/dt", or "0".
  std::string to_string() const {
    std::vector<std::string> parts;
    if (free_rank_ == 1) parts.emplace_back("Z");
    if (free_rank_ > 1) parts.push_back("Z^" + std::to_string(free_rank_));
    for (const auto& t : torsion_) parts.push_back("Z/" + t.str());
    if (parts.empty()) return "0";
    std::string s = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) s += " ⊕ " + parts[i];
    return s;
  }

 private:
  void check_length(const Vector& v) const {
    if (v.size() != generator_count()) throw UsageError("FgAbGroup: coordinate vector has wrong length");
  }

  IntMatrix relations_;
  IntMatrix to_canonical_;
  IntMatrix basis_map_;
  std::size_t free_rank_ = 0;
  Vector torsion_;
};

inline FgAbGroup cokernel(const IntMatrix& relations) { return FgAbGroup::cokernel(relations); }

inline FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b) {
  Vector t = a.torsion();
  t.insert(t.end(), b.torsion().begin(), b.torsion().end());
  auto torsion_part = cokernel(IntMatrix::diagonal(t));
  return FgAbGroup::from_invariants(a.free_rank() + b.free_rank(), torsion_part.torsion());
}

// All elements with free coordinates in [-bound, bound].
inline std::vector<Vector> enumerate_elements(const FgAbGroup& g, const Integer& free_bound = 0) {
  std::vector<Vector> out;
  const std::size_t k = g.generator_count();
  Vector lo(k), hi(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (i < g.free_rank()) {
      lo[i] = -free_bound;
      hi[i] = free_bound;
    } else {
      lo[i] = 0;
      hi[i] = g.generator_order(i) - 1;
    }
  }
  Vector cur = lo;
  for (;;) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (cur[i] < hi[i]) {
        ++cur[i];
        break;
      }
      cur[i] = lo[i];
      if (i == 0) return out;
    }
    if (k == 0) return out;
  }
}

// Homomorphism between canonical coordinates: column j is the image of
// source generator j. Columns are stored reduced.
class GroupHom {
 public:
  GroupHom(std::shared_ptr<const FgAbGroup> source, std::shared_ptr<const FgAbGroup> target, IntMatrix matrix)
      : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != target_->generator_count() || matrix_.cols() != source_->generator_count())
      throw UsageError("GroupHom: matrix shape does not match generator counts");
    for (std::size_t j = 0; j < matrix_.cols(); ++j) {
      auto col = target_->reduce(matrix_.column(j));
      for (std::size_t i = 0; i < col.size(); ++i) matrix_(i, j) = col[i];
      const Integer ord = source_->generator_order(j);
      if (ord != 0 && !target_->is_zero(target_->scale(ord, col)))
        throw UsageError("GroupHom: matrix does not respect torsion of source generator " + std::to_string(j));
    }
  }

  GroupHom(const FgAbGroup& source, const FgAbGroup& target, IntMatrix matrix)
      : GroupHom(std::make_shared<const FgAbGroup>(source), std::make_shared<const FgAbGroup>(target),
                 std::move(matrix)) {}

  static GroupHom zero(std::shared_ptr<const FgAbGroup> source, std::shared_ptr<const FgAbGroup> target) {
    IntMatrix m(target->generator_count(), source->generator_count());
    return GroupHom(std::move(source), std::move(target), std::move(m));
  }

  static GroupHom identity(std::shared_ptr<const FgAbGroup> g) {
    IntMatrix m = IntMatrix::identity(g->generator_count());
    return GroupHom(g, g, std::move(m));
  }

  const FgAbGroup& source() const noexcept { return *source_; }
  const FgAbGroup& target() const noexcept { return *target_; }
  const std::shared_ptr<const FgAbGroup>& source_ptr() const noexcept { return source_; }
  const std::shared_ptr<const FgAbGroup>& target_ptr() const noexcept { return target_; }
  const IntMatrix& matrix() const noexcept { return matrix_; }

  Vector operator()(const Vector& x) const { return target_->reduce(matrix_ * source_->reduce(x)); }

  GroupHom scaled(const Integer& k) const { return GroupHom(source_, target_, matrix_ * k); }

  bool is_zero() const { return matrix_.is_zero(); }

 private:
  std::shared_ptr<const FgAbGroup> source_;
  std::shared_ptr<const FgAbGroup> target_;
  IntMatrix matrix_;
};

// g o f
inline GroupHom compose(const GroupHom& g, const GroupHom& f) {
  if (!f.target().isomorphic(g.source()) || f.target().generator_count() != g.source().generator_count())
    throw UsageError("compose: target of first map is not the source of the second");
  return GroupHom(f.source_ptr(), g.target_ptr(), g.matrix() * f.matrix());
}

struct Quotient {
  FgAbGroup group;
  GroupHom map;  // onto `group`
};

namespace detail {

// Relation columns t_i e_i of the torsion generators, in canonical coordinates.
inline IntMatrix torsion_relations(const FgAbGroup& g) {
  IntMatrix d(g.generator_count(), g.torsion().size());
  for (std::size_t i = 0; i < g.torsion().size(); ++i) d(g.free_rank() + i, i) = g.torsion()[i];
  return d;
}

}  // namespace detail

// Cokernel of f together with the quotient map from f's target.
inline Quotient hom_cokernel(const GroupHom& f) {
  const FgAbGroup& t = f.target();
  auto q = std::make_shared<const FgAbGroup>(cokernel(detail::torsion_relations(t).hcat(f.matrix())));
  GroupHom map(f.target_ptr(), q, q->coordinate_map());
  return Quotient{*q, std::move(map)};
}

inline GroupHom inclusion_of_elements(std::shared_ptr<const FgAbGroup> g, const std::vector<Vector>& elements) {
  auto src = std::make_shared<const FgAbGroup>(FgAbGroup::free(elements.size()));
  IntMatrix m = IntMatrix::from_columns(g->generator_count(), elements);
  return GroupHom(std::move(src), std::move(g), std::move(m));
}

// G / <elements>
inline Quotient quotient(const FgAbGroup& g, const std::vector<Vector>& elements) {
  return hom_cokernel(inclusion_of_elements(std::make_shared<const FgAbGroup>(g), elements));
}

// Some x with f(x) == y, if one exists.
inline std::optional<Vector> preimage(const GroupHom& f, const Vector& y) {
  const FgAbGroup& t = f.target();
  IntMatrix a = f.matrix().hcat(detail::torsion_relations(t));
  auto sol = solve_linear(a, t.reduce(y), 0);
  if (!sol) return std::nullopt;
  Vector x(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(f.source().generator_count()));
  return f.source().reduce(std::move(x));
}

// Generators of ker f (zero elements omitted, duplicates removed).
inline std::vector<Vector> kernel_generators(const GroupHom& f) {
  const FgAbGroup& s = f.source();
  const FgAbGroup& t = f.target();
  IntMatrix a = f.matrix().hcat(detail::torsion_relations(t));
  IntMatrix k = kernel_basis(a);
  std::vector<Vector> gens;
  std::set<Vector> seen;
  for (std::size_t j = 0; j < k.cols(); ++j) {
    Vector x(s.generator_count());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = k(i, j);
    x = s.reduce(std::move(x));
    if (s.is_zero(x) || !seen.insert(x).second) continue;
    gens.push_back(std::move(x));
  }
  return gens;
}

inline bool in_subgroup(const FgAbGroup& g, const std::vector<Vector>& generators, const Vector& x) {
  if (generators.empty()) return g.is_zero(x);
  auto inc = inclusion_of_elements(std::make_shared<const FgAbGroup>(g), generators);
  return preimage(inc, x).has_value();
}

// Order of <generators> inside a finite group.
inline Integer subgroup_order(const FgAbGroup& g, const std::vector<Vector>& generators) {
  if (!g.is_finite()) throw UsageError("subgroup_order: ambient group is infinite");
  auto q = quotient(g, generators);
  return *g.order() / *q.group.order();
}

// Order of the image of f; 0 when the image is infinite.
inline Integer image_order(const GroupHom& f) {
  const FgAbGroup& t = f.target();
  std::vector<Vector> tors;
  for (std::size_t j = 0; j < f.matrix().cols(); ++j) {
    Vector c = f.matrix().column(j);
    if (t.element_order(c) == 0) return 0;
    tors.emplace_back(c.begin() + static_cast<std::ptrdiff_t>(t.free_rank()), c.end());
  }
  return subgroup_order(FgAbGroup::from_invariants(0, t.torsion()), tors);
}

// ---------------------------------------------------------------------------
// Primary decomposition

struct CyclicSummand {
  Integer prime;
  unsigned exponent = 0;
  Integer order;     // prime^exponent
  Vector generator;  // canonical coordinates in the decomposed group
};

struct PrimaryDecomposition {
  std::size_t free_rank = 0;
  std::vector<CyclicSummand> summands;
  std::vector<Vector> free_generators;
  // Rows: summands then free generators; columns: group generators.
  IntMatrix to_parts;
  // Columns: summand generators then free generators, in group coordinates.
  IntMatrix from_parts;

  std::size_t part_count() const { return summands.size() + free_generators.size(); }

  Integer part_order(std::size_t i) const { return i < summands.size() ? summands[i].order : Integer(0); }

  Vector decompose(const Vector& x) const {
    Vector p = to_parts * x;
    for (std::size_t i = 0; i < summands.size(); ++i) p[i] = floor_mod(p[i], summands[i].order);
    return p;
  }

  Vector recompose(const FgAbGroup& g, const Vector& parts) const { return g.reduce(from_parts * parts); }
};

inline std::vector<std::pair<Integer, unsigned>> factorize(Integer n) {
  std::vector<std::pair<Integer, unsigned>> f;
  n = abs_value(n);
  for (Integer p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1u);
  return f;
}

// Inverse of a modulo m (gcd(a, m) == 1), in [0, m).
inline Integer mod_inverse(const Integer& a, const Integer& m) {
  auto b = extended_gcd(floor_mod(a, m), m);
  if (b.g != 1) throw UsageError("mod_inverse: not invertible");
  return floor_mod(b.s, m);
}

inline PrimaryDecomposition primary_decompose(const FgAbGroup& g) {
  PrimaryDecomposition d;
  d.free_rank = g.free_rank();
  const std::size_t k = g.generator_count();
  std::vector<Vector> to_rows;
  std::vector<Vector> from_cols;
  for (std::size_t t = 0; t < g.torsion().size(); ++t) {
    const std::size_t gi = g.free_rank() + t;
    const Integer& ord = g.torsion()[t];
    for (auto [p, e] : factorize(ord)) {
      Integer pe = 1;
      for (unsigned i = 0; i < e; ++i) pe *= p;
      const Integer cofactor = ord / pe;
      CyclicSummand s{p, e, pe, g.scale(cofactor, g.generator(gi))};
      Vector row(k);
      row[gi] = mod_inverse(cofactor, pe);
      to_rows.push_back(std::move(row));
      from_cols.push_back(s.generator);
      d.summands.push_back(std::move(s));
    }
  }
  for (std::size_t i = 0; i < g.free_rank(); ++i) {
    d.free_generators.push_back(g.generator(i));
    to_rows.push_back(g.generator(i));
    from_cols.push_back(g.generator(i));
  }
  d.to_parts = IntMatrix::from_rows(k, to_rows);
  d.from_parts = IntMatrix::from_columns(k, from_cols);
  return d;
}

}  // namespace cohomotopy

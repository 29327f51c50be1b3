#pragma once

// Cohomology models: groups H^q(X; Z/m) for m = 0 (integers) and m = 2^k,
// coefficient reductions, Bocksteins delta_k, Sq^2 and cup pairings, all on
// canonical generators. Built from a simplicial complex or loaded from JSON.
//
// Matrices follow the GroupHom convention: rows are target generators,
// column j is the image of source generator j. A cup table entry
// table[i][j] is the coordinate vector of x_i u y_j. Maps that are not
// declared act as zero and groups that are not declared are trivial.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cohomotopy/abelian.hpp"
#include "cohomotopy/cohomology.hpp"
#include "cohomotopy/errors.hpp"
#include "cohomotopy/steenrod.hpp"

namespace cohomotopy {

using CupTable = std::vector<std::vector<Vector>>;

class CohomologyModel {
 public:
  CohomologyModel(int dimension, unsigned k_max) : dimension_(dimension), k_max_(k_max) {
    if (dimension < 0) throw UsageError("model dimension must be nonnegative");
  }

  int dimension() const noexcept { return dimension_; }
  unsigned k_max() const noexcept { return k_max_; }

  // ---- groups

  void set_group(int q, const Integer& m, const FgAbGroup& g, std::vector<std::string> names = {}) {
    if (names.empty())
      for (std::size_t i = 0; i < g.generator_count(); ++i) names.push_back(auto_name(q, m, i));
    if (names.size() != g.generator_count()) throw UsageError("set_group: generator name count mismatch");
    groups_[{q, m}] = Entry{std::make_shared<const FgAbGroup>(g.canonical_form()), std::move(names)};
  }

  bool has_group(int q, const Integer& m) const { return groups_.count({q, m}) > 0; }

  std::shared_ptr<const FgAbGroup> group_ptr(int q, const Integer& m) const {
    auto it = groups_.find({q, m});
    if (it != groups_.end()) return it->second.group;
    static const auto trivial = std::make_shared<const FgAbGroup>(FgAbGroup::trivial());
    return trivial;
  }

  const FgAbGroup& group(int q, const Integer& m = 0) const { return *group_ptr(q, m); }

  const std::vector<std::string>& generator_names(int q, const Integer& m = 0) const {
    static const std::vector<std::string> none;
    auto it = groups_.find({q, m});
    return it == groups_.end() ? none : it->second.names;
  }

  // Moduli with at least one declared group, ascending (0 first).
  std::vector<Integer> moduli() const {
    std::set<Integer> s;
    for (const auto& [key, e] : groups_) s.insert(key.second);
    return {s.begin(), s.end()};
  }

  // ---- maps

  void set_reduction(int q, const Integer& from, const Integer& to, const IntMatrix& m) {
    reductions_.insert_or_assign({q, from, to}, GroupHom(group_ptr(q, from), group_ptr(q, to), m));
  }
  bool has_reduction(int q, const Integer& from, const Integer& to) const {
    return reductions_.count({q, from, to}) > 0;
  }
  // Coefficient change Z/from -> Z/to; identity when from == to.
  GroupHom reduction(int q, const Integer& from, const Integer& to) const {
    if (from == to) return GroupHom::identity(group_ptr(q, from));
    auto it = reductions_.find({q, from, to});
    if (it != reductions_.end()) return it->second;
    return GroupHom::zero(group_ptr(q, from), group_ptr(q, to));
  }

  void set_bockstein(int q, unsigned k, const IntMatrix& m) {
    bocksteins_.insert_or_assign({q, k}, GroupHom(group_ptr(q, power_of_two(k)), group_ptr(q + 1, 0), m));
  }
  bool has_bockstein(int q, unsigned k) const { return bocksteins_.count({q, k}) > 0; }
  // delta_k : H^q(Z/2^k) -> H^{q+1}(Z).
  GroupHom bockstein(int q, unsigned k) const {
    auto it = bocksteins_.find({q, k});
    if (it != bocksteins_.end()) return it->second;
    return GroupHom::zero(group_ptr(q, power_of_two(k)), group_ptr(q + 1, 0));
  }

  void set_sq2(int q, const Integer& from, const IntMatrix& m) {
    sq2_.insert_or_assign({q, from}, GroupHom(group_ptr(q, from), group_ptr(q + 2, 2), m));
  }
  bool has_sq2(int q, const Integer& from) const { return sq2_.count({q, from}) > 0; }
  // Sq^2 : H^q(Z/from) -> H^{q+2}(Z/2). Undeclared maps are composed with the
  // reduction to Z/2 when that is possible, zero otherwise.
  GroupHom sq2(int q, const Integer& from) const {
    auto it = sq2_.find({q, from});
    if (it != sq2_.end()) return it->second;
    if (from != 2 && has_sq2(q, 2) && has_reduction(q, from, 2))
      return compose(sq2_.at({q, Integer(2)}), reduction(q, from, 2));
    return GroupHom::zero(group_ptr(q, from), group_ptr(q + 2, 2));
  }

  void set_cup(int p, int q, const Integer& m, CupTable table) {
    const auto& a = group(p, m);
    const auto& b = group(q, m);
    const auto& c = group(p + q, m);
    if (table.size() != a.generator_count()) throw UsageError("set_cup: table has wrong number of rows");
    for (auto& row : table) {
      if (row.size() != b.generator_count()) throw UsageError("set_cup: table row has wrong length");
      for (auto& v : row) v = c.reduce(v);
    }
    for (std::size_t i = 0; i < table.size(); ++i)
      for (std::size_t j = 0; j < table[i].size(); ++j) {
        const Integer oi = a.generator_order(i), oj = b.generator_order(j);
        const Integer o = oi == 0 ? oj : (oj == 0 ? oi : gcd(oi, oj));
        if (o != 0 && !c.is_zero(c.scale(o, table[i][j])))
          throw UsageError("set_cup: product of generators " + std::to_string(i) + "," + std::to_string(j) +
                           " does not respect torsion");
      }
    cups_.insert_or_assign({p, q, m}, std::move(table));
  }
  bool has_cup(int p, int q, const Integer& m) const { return cups_.count({p, q, m}) > 0; }

  // Generator table of H^p x H^q -> H^{p+q}, using graded commutativity when
  // only the transposed table is declared.
  CupTable cup_table(int p, int q, const Integer& m) const {
    auto it = cups_.find({p, q, m});
    if (it != cups_.end()) return it->second;
    const auto& a = group(p, m);
    const auto& b = group(q, m);
    const auto& c = group(p + q, m);
    CupTable t(a.generator_count(), std::vector<Vector>(b.generator_count(), c.zero()));
    auto jt = cups_.find({q, p, m});
    if (jt == cups_.end()) return t;
    const Integer sign = (p * q) % 2 ? -1 : 1;
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = 0; j < t[i].size(); ++j) t[i][j] = c.scale(sign, jt->second[j][i]);
    return t;
  }

  Vector cup(int p, int q, const Integer& m, const Vector& x, const Vector& y) const {
    return cup_with(y, p, q, m)(x);
  }

  // x |-> x u y as a homomorphism H^p -> H^{p+q}.
  GroupHom cup_with(const Vector& y, int p, int q, const Integer& m = 0) const {
    const auto t = cup_table(p, q, m);
    const auto& c = group(p + q, m);
    const Vector yr = group(q, m).reduce(y);
    IntMatrix mat(c.generator_count(), group(p, m).generator_count());
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = 0; j < yr.size(); ++j)
        if (yr[j] != 0)
          for (std::size_t r = 0; r < mat.rows(); ++r) mat(r, i) += yr[j] * t[i][j][r];
    return GroupHom(group_ptr(p, m), group_ptr(p + q, m), std::move(mat));
  }

  // ---- simplicial backend

  const std::shared_ptr<const SimplicialCohomology>& simplicial() const noexcept { return simplicial_; }
  void attach_simplicial(std::shared_ptr<const SimplicialCohomology> h) { simplicial_ = std::move(h); }

  static Integer power_of_two(unsigned k) {
    Integer p = 1;
    for (unsigned i = 0; i < k; ++i) p *= 2;
    return p;
  }

  static std::string auto_name(int q, const Integer& m, std::size_t i) {
    std::string s = "x" + std::to_string(q) + "_" + std::to_string(i);
    return m == 0 ? s : s + "/" + m.str();
  }

 private:
  struct Entry {
    std::shared_ptr<const FgAbGroup> group;
    std::vector<std::string> names;
  };

  int dimension_;
  unsigned k_max_;
  std::map<std::pair<int, Integer>, Entry> groups_;
  std::map<std::tuple<int, Integer, Integer>, GroupHom> reductions_;
  std::map<std::pair<int, unsigned>, GroupHom> bocksteins_;
  std::map<std::pair<int, Integer>, GroupHom> sq2_;
  std::map<std::tuple<int, int, Integer>, CupTable> cups_;
  std::shared_ptr<const SimplicialCohomology> simplicial_;
};

// Largest k with 2^k dividing the torsion exponent of some H^q(X; Z); at least 1.
inline unsigned default_k_max(const SimplicialCohomology& h) {
  unsigned best = 1;
  for (int q = 0; q <= h.complex()->dimension() + 1; ++q) {
    Integer e = h.group(q).torsion_exponent();
    unsigned k = 0;
    while (e % 2 == 0) {
      e /= 2;
      ++k;
    }
    best = std::max(best, k);
  }
  return best;
}

inline CohomologyModel model_from_simplicial(ComplexPtr x, std::optional<unsigned> k_max = std::nullopt) {
  auto h = std::make_shared<SimplicialCohomology>(x);
  const unsigned kk = k_max ? *k_max : default_k_max(*h);
  const int dim = x->dimension();
  CohomologyModel model(dim, kk);
  std::vector<Integer> moduli{0};
  for (unsigned k = 1; k <= kk; ++k) moduli.push_back(CohomologyModel::power_of_two(k));

  for (int q = 0; q <= dim; ++q)
    for (const auto& m : moduli) model.set_group(q, m, h->group(q, m));

  auto image_matrix = [](std::size_t rows, const std::vector<Vector>& cols) {
    return IntMatrix::from_columns(rows, cols);
  };

  for (int q = 0; q <= dim; ++q) {
    for (const auto& from : moduli)
      for (const auto& to : moduli) {
        if (to == 0 || to == from || (from != 0 && (from < to || from % to != 0))) continue;
        std::vector<Vector> cols;
        for (std::size_t i = 0; i < h->group(q, from).generator_count(); ++i)
          cols.push_back(h->reduce(h->make_class(q, from, h->group(q, from).generator(i)), to).coordinates);
        model.set_reduction(q, from, to, image_matrix(h->group(q, to).generator_count(), cols));
      }
    for (unsigned k = 1; k <= kk && q < dim; ++k) {
      const Integer m = CohomologyModel::power_of_two(k);
      std::vector<Vector> cols;
      for (std::size_t i = 0; i < h->group(q, m).generator_count(); ++i)
        cols.push_back(h->bockstein(h->make_class(q, m, h->group(q, m).generator(i))).coordinates);
      model.set_bockstein(q, k, image_matrix(h->group(q + 1).generator_count(), cols));
    }
    if (q + 2 <= dim)
      for (const auto& m : moduli) {
        std::vector<Vector> cols;
        for (std::size_t i = 0; i < h->group(q, m).generator_count(); ++i)
          cols.push_back(sq2(*h, h->make_class(q, m, h->group(q, m).generator(i))).coordinates);
        model.set_sq2(q, m, image_matrix(h->group(q + 2, 2).generator_count(), cols));
      }
  }

  for (const auto& m : moduli)
    for (int p = 0; p <= dim; ++p)
      for (int q = 0; p + q <= dim; ++q) {
        const auto& a = h->group(p, m);
        const auto& b = h->group(q, m);
        std::vector<Cochain> ra, rb;
        for (std::size_t i = 0; i < a.generator_count(); ++i)
          ra.push_back(h->representative(h->make_class(p, m, a.generator(i))));
        for (std::size_t j = 0; j < b.generator_count(); ++j)
          rb.push_back(h->representative(h->make_class(q, m, b.generator(j))));
        CupTable t(ra.size(), std::vector<Vector>(rb.size()));
        for (std::size_t i = 0; i < ra.size(); ++i)
          for (std::size_t j = 0; j < rb.size(); ++j) t[i][j] = h->classify(cup(ra[i], rb[j])).coordinates;
        model.set_cup(p, q, m, std::move(t));
      }

  model.attach_simplicial(std::move(h));
  return model;
}

// delta_k of a class with coefficients Z/2^k. With a simplicial backend and a
// representative the cochain-level recipe is used, otherwise the table.
inline CohomologyClass bockstein(const CohomologyModel& model, const CohomologyClass& c) {
  if (c.modulus < 2) throw UsageError("bockstein: class must have Z/2^k coefficients");
  unsigned k = 0;
  for (Integer m = c.modulus; m > 1; m /= 2) {
    if (m % 2 != 0) throw UsageError("bockstein: modulus must be a power of 2");
    ++k;
  }
  if (model.simplicial() && c.representative) return model.simplicial()->bockstein(c);
  return CohomologyClass{c.degree + 1, 0, model.bockstein(c.degree, k)(c.coordinates), std::nullopt};
}

// ---------------------------------------------------------------------------
// JSON model files

namespace detail {

using nlohmann::json;

inline void reject_floats(const json& j, const std::string& where) {
  if (j.is_number_float()) throw ModelError("integer-only", where, "non-integer number " + j.dump());
  if (j.is_array())
    for (std::size_t i = 0; i < j.size(); ++i) reject_floats(j[i], where + "[" + std::to_string(i) + "]");
  if (j.is_object())
    for (auto it = j.begin(); it != j.end(); ++it) reject_floats(it.value(), where + "." + it.key());
}

inline const json& field(const json& obj, const char* name, const std::string& where) {
  if (!obj.is_object() || !obj.contains(name))
    throw ModelError("missing-field", where, std::string("required field '") + name + "' is absent");
  return obj.at(name);
}

inline long long as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ModelError("integer-only", where, "expected an integer, got " + j.dump());
  return j.get<long long>();
}

inline Integer as_integer(const json& j, const std::string& where) {
  if (j.is_number_unsigned()) return Integer(j.get<unsigned long long>());
  return Integer(as_int(j, where));
}

inline Integer coefficient(const json& j, const std::string& where) {
  if (!j.is_string()) throw ModelError("coefficient-group", where, "coefficients must be a string like \"Z/2\"");
  Integer m;
  try {
    m = parse_coefficients(j.get<std::string>());
  } catch (const UsageError& e) {
    throw ModelError("coefficient-group", where, e.what());
  }
  for (Integer r = m; r > 1; r /= 2)
    if (r % 2 != 0) throw ModelError("coefficient-group", where, "only Z and Z/2^k coefficients are supported");
  return m;
}

inline unsigned two_exponent(const Integer& m) {
  unsigned k = 0;
  for (Integer r = m; r > 1; r /= 2) ++k;
  return k;
}

inline IntMatrix as_matrix(const json& j, std::size_t rows, std::size_t cols, const std::string& where) {
  if (!j.is_array() || j.size() != rows)
    throw ModelError("matrix-shape", where, "expected " + std::to_string(rows) + " rows");
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string wr = where + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != cols)
      throw ModelError("matrix-shape", wr, "expected " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = as_integer(j[i][c], wr);
  }
  return m;
}

inline std::pair<int, int> degree_pair(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw ModelError("degree-range", where, "degrees must be a pair");
  return {static_cast<int>(as_int(j[0], where)), static_cast<int>(as_int(j[1], where))};
}

}  // namespace detail

inline CohomologyModel load_algebraic_model(const std::string& text) {
  using detail::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelError("syntax", "document", e.what());
  }
  if (!doc.is_object()) throw ModelError("syntax", "document", "top level must be an object");
  detail::reject_floats(doc, "document");

  const long long dim = detail::as_int(detail::field(doc, "dimension", "document"), "dimension");
  const long long kmax = detail::as_int(detail::field(doc, "k_max", "document"), "k_max");
  if (dim < 0 || dim > 64) throw ModelError("degree-range", "dimension", "dimension must lie in [0, 64]");
  if (kmax < 0 || kmax > 64) throw ModelError("coefficient-group", "k_max", "k_max must lie in [0, 64]");
  CohomologyModel model(static_cast<int>(dim), static_cast<unsigned>(kmax));

  const json& groups = detail::field(doc, "groups", "document");
  if (!groups.is_object()) throw ModelError("missing-field", "groups", "groups must be an object");
  for (auto it = groups.begin(); it != groups.end(); ++it) {
    const std::string where = "groups." + it.key();
    const std::string& key = it.key();
    const auto comma = key.find(',');
    if (key.size() < 4 || key[0] != 'H' || comma == std::string::npos)
      throw ModelError("degree-range", where, "group keys look like \"H2,Z\" or \"H2,Z/2\"");
    const std::string deg = key.substr(1, comma - 1);
    if (deg.empty() || deg.find_first_not_of("0123456789") != std::string::npos || deg.size() > 3)
      throw ModelError("degree-range", where, "bad degree '" + deg + "'");
    const int q = std::stoi(deg);
    if (q > dim) throw ModelError("degree-range", where, "degree exceeds the model dimension");
    const Integer m = detail::coefficient(json(key.substr(comma + 1)), where);
    const json& g = it.value();
    const long long free_rank = detail::as_int(detail::field(g, "free_rank", where), where + ".free_rank");
    if (free_rank < 0) throw ModelError("invariant-factors", where, "free_rank must be nonnegative");
    Vector torsion;
    const json& t = detail::field(g, "torsion", where);
    if (!t.is_array()) throw ModelError("invariant-factors", where, "torsion must be an array");
    for (const auto& e : t) torsion.push_back(detail::as_integer(e, where + ".torsion"));
    FgAbGroup group;
    try {
      group = FgAbGroup::from_invariants(static_cast<std::size_t>(free_rank), torsion);
    } catch (const UsageError& e) {
      throw ModelError("invariant-factors", where, e.what());
    }
    if (m != 0) {
      if (free_rank != 0) throw ModelError("coefficient-group", where, "Z/m cohomology cannot have free part");
      for (const auto& d : torsion)
        if (m % d != 0) throw ModelError("coefficient-group", where, "invariant factor does not divide " + m.str());
    }
    std::vector<std::string> names;
    if (g.contains("generators")) {
      const json& n = g.at("generators");
      if (!n.is_array()) throw ModelError("generator-count", where, "generators must be an array of names");
      for (const auto& s : n) {
        if (!s.is_string()) throw ModelError("generator-count", where, "generator names must be strings");
        names.push_back(s.get<std::string>());
      }
      if (names.size() != group.generator_count())
        throw ModelError("generator-count", where,
                         "expected " + std::to_string(group.generator_count()) + " generator names");
    }
    model.set_group(q, m, group, std::move(names));
  }

  std::set<std::string> seen;
  const json empty = json::array();
  const json& maps = doc.contains("maps") ? doc.at("maps") : empty;
  if (!maps.is_array()) throw ModelError("missing-field", "maps", "maps must be an array");
  for (std::size_t idx = 0; idx < maps.size(); ++idx) {
    const json& mp = maps[idx];
    const std::string where = "maps[" + std::to_string(idx) + "]";
    const json& kind_j = detail::field(mp, "kind", where);
    if (!kind_j.is_string()) throw ModelError("unknown-kind", where, "kind must be a string");
    const std::string kind = kind_j.get<std::string>();
    const auto [d0, d1] = detail::degree_pair(detail::field(mp, "degrees", where), where + ".degrees");
    const json& coeffs = detail::field(mp, "coefficients", where);

    auto check_degree = [&](int q) {
      if (q < 0 || q > dim) throw ModelError("degree-range", where, "degree " + std::to_string(q) + " out of range");
    };
    auto coefficient_pair = [&]() {
      if (!coeffs.is_array() || coeffs.size() != 2)
        throw ModelError("coefficient-group", where, "coefficients must be a pair of strings");
      return std::make_pair(detail::coefficient(coeffs[0], where), detail::coefficient(coeffs[1], where));
    };
    auto read_matrix = [&](int qs, const Integer& ms, int qt, const Integer& mt) {
      return detail::as_matrix(detail::field(mp, "matrix", where), model.group(qt, mt).generator_count(),
                               model.group(qs, ms).generator_count(), where + ".matrix");
    };
    auto torsion_checked = [&](auto&& setter) {
      try {
        setter();
      } catch (const UsageError& e) {
        throw ModelError("torsion-respect", where, e.what());
      }
    };

    std::string signature;
    if (kind == "reduction") {
      auto [from, to] = coefficient_pair();
      check_degree(d0);
      if (d0 != d1) throw ModelError("degree-range", where, "a reduction preserves degree");
      if (to == 0 || from == to || (from != 0 && from % to != 0))
        throw ModelError("coefficient-group", where, "reduction must go from Z or Z/2^k to a smaller Z/2^j");
      IntMatrix m = read_matrix(d0, from, d0, to);
      torsion_checked([&] { model.set_reduction(d0, from, to, m); });
      signature = kind + ":" + std::to_string(d0) + ":" + from.str() + ">" + to.str();
    } else if (kind == "bockstein") {
      auto [from, to] = coefficient_pair();
      check_degree(d0);
      check_degree(d1);
      if (d1 != d0 + 1) throw ModelError("degree-range", where, "a Bockstein raises degree by one");
      if (from < 2 || to != 0) throw ModelError("coefficient-group", where, "a Bockstein goes from Z/2^k to Z");
      const unsigned k = detail::two_exponent(from);
      if (k > static_cast<unsigned>(kmax)) throw ModelError("coefficient-group", where, "2^k exceeds 2^k_max");
      IntMatrix m = read_matrix(d0, from, d1, 0);
      const auto& target = model.group(d1, 0);
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (!target.is_zero(target.scale(from, m.column(j))))
          throw ModelError("bockstein-torsion", where,
                           "image of generator " + std::to_string(j) + " is not " + from.str() + "-torsion");
      torsion_checked([&] { model.set_bockstein(d0, k, m); });
      signature = kind + ":" + std::to_string(d0) + ":" + from.str();
    } else if (kind == "sq2") {
      auto [from, to] = coefficient_pair();
      check_degree(d0);
      check_degree(d1);
      if (d1 != d0 + 2) throw ModelError("degree-range", where, "Sq^2 raises degree by two");
      if (to != 2) throw ModelError("coefficient-group", where, "Sq^2 lands in Z/2 coefficients");
      IntMatrix m = read_matrix(d0, from, d1, 2);
      torsion_checked([&] { model.set_sq2(d0, from, m); });
      signature = kind + ":" + std::to_string(d0) + ":" + from.str();
    } else if (kind == "cup") {
      const Integer m = detail::coefficient(coeffs, where);
      check_degree(d0);
      check_degree(d1);
      if (d0 + d1 > dim) throw ModelError("degree-range", where, "product degree exceeds the model dimension");
      const auto& a = model.group(d0, m);
      const auto& b = model.group(d1, m);
      const auto& c = model.group(d0 + d1, m);
      const json& tj = detail::field(mp, "table", where);
      if (!tj.is_array() || tj.size() != a.generator_count())
        throw ModelError("matrix-shape", where + ".table", "expected " + std::to_string(a.generator_count()) + " rows");
      CupTable table;
      for (std::size_t i = 0; i < tj.size(); ++i) {
        const std::string wr = where + ".table[" + std::to_string(i) + "]";
        if (!tj[i].is_array() || tj[i].size() != b.generator_count())
          throw ModelError("matrix-shape", wr, "expected " + std::to_string(b.generator_count()) + " entries");
        auto& row = table.emplace_back();
        for (std::size_t j = 0; j < tj[i].size(); ++j) {
          const json& e = tj[i][j];
          if (!e.is_array() || e.size() != c.generator_count())
            throw ModelError("matrix-shape", wr, "each entry is a vector of " +
                                                     std::to_string(c.generator_count()) + " coordinates");
          Vector v;
          for (const auto& z : e) v.push_back(detail::as_integer(z, wr));
          row.push_back(std::move(v));
        }
      }
      torsion_checked([&] { model.set_cup(d0, d1, m, table); });
      signature = kind + ":" + std::to_string(d0) + "," + std::to_string(d1) + ":" + m.str();
    } else {
      throw ModelError("unknown-kind", where, "unknown map kind '" + kind + "'");
    }
    if (!seen.insert(signature).second) throw ModelError("duplicate-map", where, "map declared twice");
  }

  // Cross-checks between declared tables.
  for (const auto& m : model.moduli())
    for (int p = 0; p <= dim; ++p)
      for (int q = p; p + q <= dim; ++q) {
        const auto& c = model.group(p + q, m);
        const Integer sign = (p * q) % 2 ? -1 : 1;
        const std::string where = "cup H" + std::to_string(p) + " x H" + std::to_string(q) + " (" +
                                  coefficients_name(m) + ")";
        if (p == q && model.has_cup(p, p, m)) {
          auto t = model.cup_table(p, p, m);
          for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
              if (c.reduce(t[i][j]) != c.scale(sign, t[j][i]))
                throw ModelError("cup-symmetry", where, "table is not graded-commutative");
        }
        if (p != q && model.has_cup(p, q, m) && model.has_cup(q, p, m)) {
          auto t = model.cup_table(p, q, m);
          auto u = model.cup_table(q, p, m);
          for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t j = 0; j < t[i].size(); ++j)
              if (c.reduce(t[i][j]) != c.scale(sign, u[j][i]))
                throw ModelError("cup-symmetry", where, "(p,q) and (q,p) tables disagree");
        }
      }
  if (model.has_sq2(2, 2) && model.has_cup(2, 2, 2)) {
    auto s = model.sq2(2, 2);
    auto t = model.cup_table(2, 2, 2);
    for (std::size_t i = 0; i < t.size(); ++i)
      if (s.matrix().column(i) != model.group(4, 2).reduce(t[i][i]))
        throw ModelError("sq2-square", "sq2 H2 (Z/2)", "Sq^2 differs from the cup square on generator " +
                                                            std::to_string(i));
  }
  return model;
}

}  // namespace cohomotopy

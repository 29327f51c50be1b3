#pragma once

// Command-line front end. run() is separate from main() so tests can drive it
// with string streams.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cohomotopy/cohomotopy.hpp"

namespace cohomotopy::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kInputFile = 3, kModel = 4 };

class InputFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Input {
  std::optional<CohomologyModel> model;
  std::shared_ptr<const SimplicialComplex> complex;  // set for facet files
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputFileError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline bool looks_like_json(const std::string& path, const std::string& text) {
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) return true;
  auto p = text.find_first_not_of(" \t\r\n");
  return p != std::string::npos && text[p] == '{';
}

// Facet files keep the complex; the model is built on demand.
inline Input load_input(const std::string& path) {
  const std::string text = read_file(path);
  Input in;
  if (looks_like_json(path, text)) {
    in.model = load_algebraic_model(text);
  } else {
    try {
      in.complex = std::make_shared<const SimplicialComplex>(parse_complex(text));
    } catch (const ParseError& e) {
      throw InputFileError(path + ": " + e.what());
    }
  }
  return in;
}

inline CohomologyModel& model_of(Input& in, std::optional<unsigned> k_max) {
  if (!in.model) in.model = model_from_simplicial(in.complex, k_max);
  return *in.model;
}

inline std::string format_element(const std::vector<std::string>& names, const Vector& coords) {
  std::string s;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] == 0) continue;
    const Integer c = coords[i];
    const Integer a = abs_value(c);
    if (s.empty())
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    if (a != 1) s += a.str() + "·";
    s += i < names.size() ? names[i] : "g" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

inline std::string format_tuple(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + ")";
}

inline nlohmann::json group_json(const FgAbGroup& g) {
  nlohmann::json t = nlohmann::json::array();
  for (const auto& d : g.torsion()) t.push_back(d.str());
  return {{"free_rank", g.free_rank()}, {"torsion", t}, {"group", g.to_string()}};
}

inline nlohmann::json vector_json(const Vector& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

inline std::vector<std::string> coker_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("e" + std::to_string(i));
  return names;
}

inline Vector parse_beta(const std::string& s) {
  Vector v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto b = tok.find_first_not_of(" \t");
    auto e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) throw UsageError("--beta: empty coordinate");
    tok = tok.substr(b, e - b + 1);
    const std::size_t start = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
    if (tok.size() == start || tok.find_first_not_of("0123456789", start) != std::string::npos)
      throw UsageError("--beta: '" + tok + "' is not an integer");
    v.emplace_back(tok[0] == '+' ? tok.substr(1) : tok);
  }
  return v;
}

// ---- subcommands

inline int cmd_cohomology(const std::string& path, std::optional<int> degree, const std::string& coeffs,
                          bool json, std::ostream& out) {
  const Integer m = parse_coefficients(coeffs);
  Input in = load_input(path);
  const int dim = in.model ? in.model->dimension() : in.complex->dimension();
  if (degree && *degree < 0) throw UsageError("degree must be nonnegative");
  std::unique_ptr<SimplicialCohomology> h;
  if (in.complex) h = std::make_unique<SimplicialCohomology>(in.complex);
  nlohmann::json doc = nlohmann::json::array();
  const int lo = degree ? *degree : 0;
  const int hi = degree ? *degree : dim;
  for (int q = lo; q <= hi; ++q) {
    const FgAbGroup& g = h ? h->group(q, m) : in.model->group(q, m);
    std::vector<std::string> names;
    if (h)
      for (std::size_t i = 0; i < g.generator_count(); ++i) names.push_back(CohomologyModel::auto_name(q, m, i));
    else
      names = in.model->generator_names(q, m);
    if (json) {
      auto e = group_json(g);
      e["degree"] = q;
      e["coefficients"] = coefficients_name(m);
      e["generators"] = names;
      doc.push_back(e);
      continue;
    }
    out << "H^" << q << "(X;" << coefficients_name(m) << ") = " << g.to_string() << "\n";
    if (!names.empty()) {
      out << "  generators:";
      for (std::size_t i = 0; i < names.size(); ++i) {
        out << " " << names[i];
        if (g.generator_order(i) != 0) out << " (order " << g.generator_order(i) << ")";
      }
      out << "\n";
    }
  }
  if (json) out << doc.dump(2) << "\n";
  return kOk;
}

inline int cmd_sphere_maps(const std::string& path, int n, std::optional<unsigned> k_max, bool json,
                           std::ostream& out) {
  Input in = load_input(path);
  const auto& model = model_of(in, k_max);
  SphereMapGroup s = sphere_maps(model, n);
  const auto& hn_names = model.generator_names(n, 0);
  const auto cn = coker_names(s.coker->generator_count());
  const std::string N = std::to_string(n);
  if (json) {
    nlohmann::json rels = nlohmann::json::array();
    for (const auto& r : s.relations)
      rels.push_back({{"generator", format_element(hn_names, s.decomposition.summands[r.summand].generator)},
                      {"order", r.order.str()},
                      {"k", r.k},
                      {"bockstein_lift", vector_json(r.bockstein_lift)},
                      {"correction", vector_json(r.correction)}});
    nlohmann::json doc{{"n", n},
                       {"group", group_json(*s.group)},
                       {"coker_sq2bar", group_json(*s.coker)},
                       {"hn", group_json(*s.hn)},
                       {"split", s.split()},
                       {"relations", rels}};
    out << doc.dump(2) << "\n";
    return kOk;
  }
  out << "[X,S^" << N << "] = " << s.group->to_string() << "\n";
  out << "  coker(Sq2bar) = H^" << n + 1 << "(X;Z/2)/Sq^2 H^" << n - 1 << "(X;Z) = " << s.coker->to_string() << "\n";
  out << "  H^" << N << "(X;Z) = " << s.hn->to_string() << "\n";
  if (s.split())
    out << "  extension: split, [X,S^" << N << "] = coker ⊕ H^" << N << " = "
        << direct_sum(*s.coker, *s.hn).to_string() << "\n";
  else
    out << "  extension: nonsplit\n";
  for (const auto& r : s.relations) {
    const auto& sm = s.decomposition.summands[r.summand];
    out << "  relation: " << r.order << "·lift(" << format_element(hn_names, sm.generator)
        << ") = " << format_element(cn, r.correction) << "\n";
  }
  return kOk;
}

inline void print_report(const FiberReport& r, const SphereMapGroup& s, std::ostream& out) {
  out << "β = " << format_tuple(r.beta) << ": ";
  if (!r.realizable) {
    out << "not realizable (β∪β ≠ 0)\n";
    return;
  }
  out << "realizable, fiber = " << r.fiber->group.to_string() << "\n";
  const Integer c = *s.coker->order();
  const Integer k = subgroup_order(*s.coker, r.q_kernel);
  out << "  P_β = " << r.p_beta->group.to_string() << ", image of coker(Sq2bar) in fiber has order " << c / k
      << ", ker q has order " << k << "\n";
}

inline nlohmann::json report_json(const FiberReport& r, const SphereMapGroup& s) {
  nlohmann::json j{{"beta", vector_json(r.beta)}, {"realizable", r.realizable}};
  if (r.realizable) {
    j["fiber"] = group_json(r.fiber->group);
    j["p_beta"] = group_json(r.p_beta->group);
    j["q_kernel_order"] = subgroup_order(*s.coker, r.q_kernel).str();
  }
  return j;
}

inline int cmd_pi2(const std::string& path, const std::optional<std::string>& beta, std::optional<long long> bound,
                   std::optional<unsigned> k_max, bool json, std::ostream& out) {
  Input in = load_input(path);
  const auto& model = model_of(in, k_max);
  if (model.dimension() > 4) throw UsageError("pi2: model dimension exceeds 4");
  SphereMapGroup s = sphere_maps(model, 3);
  if (beta) {
    Vector b = parse_beta(*beta);
    const auto& h2 = model.group(2, 0);
    if (b.size() != h2.generator_count())
      throw UsageError("--beta needs " + std::to_string(h2.generator_count()) + " coordinates (H^2(X;Z) = " +
                       h2.to_string() + ")");
    auto r = pi2_fiber(model, s, b);
    if (json)
      out << report_json(r, s).dump(2) << "\n";
    else
      print_report(r, s, out);
    return kOk;
  }
  if (bound && *bound < 0) throw UsageError("--enumerate needs a nonnegative bound");
  std::optional<Integer> bnd;
  if (bound) bnd = Integer(*bound);
  auto e = pi2_enumerate(model, bnd);
  if (json) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& r : e.reports) a.push_back(report_json(r, s));
    nlohmann::json doc{{"reports", a}};
    doc["total"] = e.total ? nlohmann::json(e.total->str()) : nlohmann::json(nullptr);
    out << doc.dump(2) << "\n";
    return kOk;
  }
  for (const auto& r : e.reports) print_report(r, s, out);
  out << "total: " << (e.total ? e.total->str() : std::string("infinite")) << "\n";
  return kOk;
}

inline int cmd_classify_type(const std::string& path, std::optional<unsigned> k_max, bool json, std::ostream& out) {
  Input in = load_input(path);
  const int t = classify_4manifold_type(model_of(in, k_max));
  if (json)
    out << nlohmann::json{{"type", t}}.dump() << "\n";
  else
    out << "type " << t << "\n";
  return kOk;
}

inline int cmd_torsor_demo(bool json, std::ostream& out) {
  const auto s3 = FiniteGroup::symmetric(3);
  const auto b = FiniteBiTorsor::regular(s3);
  const std::size_t e = s3.identity();
  const std::size_t t = 1;  // the transposition (0 2 1) in lexicographic order
  const auto ge = gamma(b, e);
  const auto gt = gamma(b, t);
  const std::size_t h = verify_conjugacy(b, e, t);
  bool conj = true;
  for (std::size_t g = 0; g < s3.order(); ++g)
    conj = conj && gt[g] == s3.mul(s3.mul(s3.inverse(t), g), t);
  if (json) {
    out << nlohmann::json{{"group", "S3"},
                          {"gamma_e", ge},
                          {"gamma_t", gt},
                          {"gamma_t_is_conjugation_by_t", conj},
                          {"h", h}}
               .dump(2)
        << "\n";
    return kOk;
  }
  out << "regular S3 bi-torsor (elements are permutations in lexicographic order, t = 1)\n";
  auto line = [&](const char* label, const GroupMap& m) {
    out << "  " << label << ":";
    for (auto v : m) out << " " << v;
    out << "\n";
  };
  line("gamma_e", ge);
  line("gamma_t", gt);
  out << "  gamma_t is conjugation by t: " << (conj ? "yes" : "no") << "\n";
  out << "  gamma_e = h^-1 gamma_t h with h = " << h << "\n";
  return kOk;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Homotopy classes of maps into spheres from simplicial complexes or cohomology models",
               "cohomotopy"};
  app.require_subcommand(1);
  bool json = false;
  std::optional<unsigned> k_max;
  app.add_flag("--json", json, "Machine-readable output");
  app.add_option("--k-max", k_max, "Largest k with Z/2^k coefficients (simplicial input)");

  std::string path;
  std::optional<int> degree;
  std::string coeffs = "Z";
  auto* coh = app.add_subcommand("cohomology", "Print cohomology groups");
  coh->add_option("file", path, "Facet file or JSON model")->required();
  coh->add_option("degree", degree, "Only this degree");
  coh->add_option("--coefficients", coeffs, "Z or Z/m")->capture_default_str();

  int n = 3;
  auto* sm = app.add_subcommand("sphere-maps", "Print [X,S^n] with its extension data");
  sm->add_option("file", path, "Facet file or JSON model")->required();
  sm->add_option("n", n, "Sphere dimension (at least 3)")->required();

  std::optional<std::string> beta;
  std::optional<long long> bound;
  auto* pi2 = app.add_subcommand("pi2", "Fibres of [X,S^2] -> H^2(X;Z)");
  pi2->add_option("file", path, "Facet file or JSON model")->required();
  auto* beta_opt = pi2->add_option("--beta", beta, "Coordinates of beta in the H^2 generators, e.g. 1,0");
  pi2->add_option("--enumerate", bound, "Enumerate beta with free coordinates in [-N, N]")->excludes(beta_opt);

  auto* ct = app.add_subcommand("classify-type", "Type 1, 2 or 3 of a closed 4-manifold model");
  ct->add_option("file", path, "Facet file or JSON model")->required();

  auto* td = app.add_subcommand("torsor-demo", "Bi-torsor isomorphisms for S3");

  for (auto* sub : {coh, sm, pi2, ct, td}) {
    sub->add_flag("--json", json, "Machine-readable output");
    sub->add_option("--k-max", k_max, "Largest k with Z/2^k coefficients (simplicial input)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*coh) return cmd_cohomology(path, degree, coeffs, json, out);
    if (*sm) return cmd_sphere_maps(path, n, k_max, json, out);
    if (*pi2) return cmd_pi2(path, beta, bound, k_max, json, out);
    if (*ct) return cmd_classify_type(path, k_max, json, out);
    if (*td) return cmd_torsor_demo(json, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InputFileError& e) {
    err << "error: " << e.what() << "\n";
    return kInputFile;
  } catch (const ModelError& e) {
    err << "error: invalid model: " << e.what() << "\n";
    return kModel;
  } catch (const ConsistencyError& e) {
    err << "error: inconsistent model: " << e.what() << "\n";
    return kModel;
  }
  return kUsage;
}

}  // namespace cohomotopy::cli

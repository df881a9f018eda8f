#pragma once

// JSON formats for categories, algebras, morphisms, reports and Cardy manifests.
// Complex numbers are [re, im]; indices are 0-based; label 0 is the unit.
// Unknown fields are rejected with ParseError.

#include "modcat/cardy.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace modcat::io {

using json = nlohmann::json;

namespace detail {

inline void require_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, where + ": expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key())) throw Error(ErrorKind::ParseError, where + ": unknown field '" + it.key() + "'");
}

inline const json& field(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorKind::ParseError, where + ": missing field '" + key + "'");
  return *it;
}

inline int to_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw Error(ErrorKind::ParseError, where + ": expected an integer");
  return j.get<int>();
}

inline std::vector<int> int_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, where + ": expected an array of integers");
  std::vector<int> out;
  for (const auto& e : j) out.push_back(to_int(e, where));
  return out;
}

}  // namespace detail

inline json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j, const std::string& where = "complex") {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(ErrorKind::ParseError, where + ": complex numbers are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Rows of [re, im] entries. An empty array is a 0 x cols matrix.
inline Matrix matrix_from_json(const json& j, const std::string& where, Eigen::Index cols_if_empty = 0) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, where + ": matrix must be an array of rows");
  if (j.empty()) return Matrix(0, cols_if_empty);
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw Error(ErrorKind::ParseError, where + ": ragged matrix");
    for (std::size_t k = 0; k < cols; ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = complex_from_json(j[i][k], where);
  }
  return m;
}

// ---------------------------------------------------------------- categories

inline json category_to_json(const CategoryData& cat) {
  json j;
  j["name"] = cat.name;
  const int n = cat.rank();
  json labels = json::array();
  for (const auto& l : cat.ring.labels()) {
    json e = {{"name", l.name}, {"dual", l.dual}};
    if (l.is_unit) e["unit"] = true;
    labels.push_back(std::move(e));
  }
  j["labels"] = std::move(labels);
  json fusion = json::array();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (int m = cat.ring(a, b, c)) fusion.push_back({a, b, c, m});
  j["fusion"] = std::move(fusion);

  // Only blocks without a unit leg are stored; the loader regenerates the rest.
  json F = json::array();
  for (int a = 1; a < n; ++a)
    for (int b = 1; b < n; ++b)
      for (int c = 1; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          if (!cat.has_f(a, b, c, d)) continue;
          const FBlock& blk = cat.f(a, b, c, d);
          json rows = json::array(), cols = json::array();
          for (const auto& v : blk.rows) rows.push_back(v);
          for (const auto& v : blk.cols) cols.push_back(v);
          F.push_back({{"a", a}, {"b", b}, {"c", c}, {"d", d}, {"rows", rows}, {"cols", cols},
                       {"matrix", matrix_to_json(blk.matrix)}});
        }
  j["F"] = std::move(F);
  json R = json::array();
  for (int a = 1; a < n; ++a)
    for (int b = 1; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (cat.has_r(a, b, c)) R.push_back({{"a", a}, {"b", b}, {"c", c}, {"matrix", matrix_to_json(cat.r(a, b, c))}});
  j["R"] = std::move(R);
  json theta = json::array(), dc = json::array();
  for (Complex t : cat.theta) theta.push_back(complex_to_json(t));
  for (Complex t : cat.dualcoef) dc.push_back(complex_to_json(t));
  j["theta"] = std::move(theta);
  j["dualcoef"] = std::move(dc);
  j["dagger"] = cat.dagger;
  j["tolerance"] = {{"abs", cat.tol.abs_tol}, {"rel", cat.tol.rel_tol}};
  return j;
}

inline CategoryData category_from_json(const json& j, const std::string& fallback_name = "category") {
  using namespace detail;
  require_keys(j, {"name", "labels", "fusion", "F", "R", "theta", "dualcoef", "dagger", "tolerance"}, "category");
  CategoryData cat;
  cat.name = j.contains("name") ? j["name"].get<std::string>() : fallback_name;

  const json& jl = field(j, "labels", "category");
  if (!jl.is_array() || jl.empty()) throw Error(ErrorKind::ParseError, "labels: expected a non-empty array");
  std::vector<Label> labels;
  for (std::size_t i = 0; i < jl.size(); ++i) {
    const std::string w = "labels[" + std::to_string(i) + "]";
    require_keys(jl[i], {"name", "dual", "unit"}, w);
    Label l;
    l.index = static_cast<int>(i);
    l.name = field(jl[i], "name", w).get<std::string>();
    l.dual = to_int(field(jl[i], "dual", w), w);
    l.is_unit = jl[i].value("unit", false);
    if (l.dual < 0 || l.dual >= static_cast<int>(jl.size())) throw Error(ErrorKind::ParseError, w + ": dual out of range");
    if (l.is_unit != (i == 0)) throw Error(ErrorKind::ParseError, w + ": label 0 and only label 0 is the unit");
    labels.push_back(std::move(l));
  }
  const int n = static_cast<int>(labels.size());
  cat.ring = FusionRing(labels);
  auto check_label = [&](int x, const std::string& w) {
    if (x < 0 || x >= n) throw Error(ErrorKind::ParseError, w + ": label index out of range");
    return x;
  };

  for (const auto& e : field(j, "fusion", "category")) {
    const auto v = int_list(e, "fusion");
    if (v.size() != 4 || v[3] < 0) throw Error(ErrorKind::ParseError, "fusion entries are [i, j, k, N] with N >= 0");
    cat.ring.set(check_label(v[0], "fusion"), check_label(v[1], "fusion"), check_label(v[2], "fusion"), v[3]);
  }

  if (j.contains("F"))
    for (const auto& e : j["F"]) {
      require_keys(e, {"a", "b", "c", "d", "rows", "cols", "matrix"}, "F");
      const int a = check_label(to_int(field(e, "a", "F"), "F"), "F"), b = check_label(to_int(field(e, "b", "F"), "F"), "F");
      const int c = check_label(to_int(field(e, "c", "F"), "F"), "F"), d = check_label(to_int(field(e, "d", "F"), "F"), "F");
      FBlock blk;
      for (const auto& r : field(e, "rows", "F")) {
        const auto v = int_list(r, "F rows");
        if (v.size() != 3) throw Error(ErrorKind::ParseError, "F rows are [e, alpha, beta]");
        blk.rows.push_back({v[0], v[1], v[2]});
      }
      for (const auto& r : field(e, "cols", "F")) {
        const auto v = int_list(r, "F cols");
        if (v.size() != 3) throw Error(ErrorKind::ParseError, "F cols are [f, gamma, delta]");
        blk.cols.push_back({v[0], v[1], v[2]});
      }
      blk.matrix = matrix_from_json(field(e, "matrix", "F"), "F matrix");
      if (cat.has_f(a, b, c, d)) throw Error(ErrorKind::ParseError, "duplicate F-block " + cat.quad(a, b, c, d));
      cat.set_f(a, b, c, d, std::move(blk));
    }
  if (j.contains("R"))
    for (const auto& e : j["R"]) {
      require_keys(e, {"a", "b", "c", "matrix"}, "R");
      const int a = check_label(to_int(field(e, "a", "R"), "R"), "R"), b = check_label(to_int(field(e, "b", "R"), "R"), "R");
      const int c = check_label(to_int(field(e, "c", "R"), "R"), "R");
      if (cat.has_r(a, b, c)) throw Error(ErrorKind::ParseError, "duplicate R-block");
      cat.set_r(a, b, c, matrix_from_json(field(e, "matrix", "R"), "R matrix"));
    }
  for (const auto& t : field(j, "theta", "category")) cat.theta.push_back(complex_from_json(t, "theta"));
  if (j.contains("dualcoef"))
    for (const auto& t : j["dualcoef"]) cat.dualcoef.push_back(complex_from_json(t, "dualcoef"));
  if (j.contains("dagger")) {
    if (!j["dagger"].is_boolean()) throw Error(ErrorKind::ParseError, "dagger must be a boolean");
    cat.dagger = j["dagger"].get<bool>();
  }
  if (j.contains("tolerance")) {
    const json& t = j["tolerance"];
    if (t.is_number()) {
      cat.tol.abs_tol = cat.tol.rel_tol = t.get<double>();
    } else {
      require_keys(t, {"abs", "rel"}, "tolerance");
      cat.tol.abs_tol = t.value("abs", cat.tol.abs_tol);
      cat.tol.rel_tol = t.value("rel", cat.tol.rel_tol);
    }
  }
  cat.finalize();
  return cat;
}

// ---------------------------------------------------------------- objects and morphisms

inline json object_to_json(const Object& x) {
  json leaves = json::array();
  for (const auto& l : x.leaves()) leaves.push_back(l);
  return leaves;
}

inline Object object_from_json(const Category& C, const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::ParseError, where + ": object is a non-empty list of leaves");
  // A bare multiplicity vector is accepted as a one-leaf word.
  if (j[0].is_number_integer()) return C.atomic(detail::int_list(j, where));
  std::vector<Mult> leaves;
  for (const auto& l : j) {
    Mult m = detail::int_list(l, where);
    if (static_cast<int>(m.size()) != C.rank()) throw Error(ErrorKind::ParseError, where + ": leaf has wrong length");
    leaves.push_back(std::move(m));
  }
  return Object(std::move(leaves));
}

/// Nonzero-size blocks as [{"k": label, "matrix": rows}].
inline json blocks_to_json(const Morphism& f) {
  json out = json::array();
  for (int k = 0; k < f.rank(); ++k)
    if (f.blocks[k].size() > 0) out.push_back({{"k", k}, {"matrix", matrix_to_json(f.blocks[k])}});
  return out;
}

inline Morphism blocks_from_json(const Category& C, const json& j, const Object& src, const Object& tgt,
                                 const std::string& where) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, where + ": expected a list of blocks");
  Morphism f = C.zero(src, tgt);
  std::set<int> seen;
  for (const auto& b : j) {
    detail::require_keys(b, {"k", "matrix"}, where);
    const int k = detail::to_int(detail::field(b, "k", where), where);
    if (k < 0 || k >= C.rank() || !seen.insert(k).second)
      throw Error(ErrorKind::ParseError, where + ": bad or repeated block label");
    Matrix m = matrix_from_json(detail::field(b, "matrix", where), where, f.blocks[k].cols());
    if (m.rows() != f.blocks[k].rows() || m.cols() != f.blocks[k].cols())
      throw Error(ErrorKind::ShapeMismatch, where + ": block " + C.ring().name(k) + " has shape " +
                                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                                ", expected " + std::to_string(f.blocks[k].rows()) + "x" +
                                                std::to_string(f.blocks[k].cols()));
    f.blocks[k] = std::move(m);
  }
  return f;
}

inline json morphism_to_json(const Morphism& f) {
  return {{"source", object_to_json(f.source)}, {"target", object_to_json(f.target)}, {"blocks", blocks_to_json(f)}};
}

inline Morphism morphism_from_json(const Category& C, const json& j) {
  detail::require_keys(j, {"source", "target", "blocks"}, "morphism");
  const Object s = object_from_json(C, detail::field(j, "source", "morphism"), "morphism source");
  const Object t = object_from_json(C, detail::field(j, "target", "morphism"), "morphism target");
  return blocks_from_json(C, detail::field(j, "blocks", "morphism"), s, t, "morphism blocks");
}

// ---------------------------------------------------------------- algebras

inline json algebra_to_json(const AlgebraPresentation& a) {
  if (!a.A.is_atomic()) throw Error(ErrorKind::ShapeMismatch, "only algebras on a single leaf are serialisable");
  json j;
  j["name"] = a.name;
  j["object"] = a.A.leaf(0);
  j["m"] = blocks_to_json(a.m);
  j["eta"] = blocks_to_json(a.eta);
  if (a.delta) j["delta"] = blocks_to_json(*a.delta);
  if (a.eps) j["eps"] = blocks_to_json(*a.eps);
  return j;
}

inline AlgebraPresentation algebra_from_json(const Category& C, const json& j, const std::string& fallback_name = "A") {
  detail::require_keys(j, {"name", "object", "m", "eta", "delta", "eps"}, "algebra");
  AlgebraPresentation a;
  a.name = j.contains("name") ? j["name"].get<std::string>() : fallback_name;
  Mult m = detail::int_list(detail::field(j, "object", "algebra"), "algebra object");
  if (static_cast<int>(m.size()) != C.rank())
    throw Error(ErrorKind::ParseError, "algebra object needs one multiplicity per label");
  a.A = C.atomic(m);
  const Object AA = a.A * a.A, I = C.unit();
  a.m = blocks_from_json(C, detail::field(j, "m", "algebra"), AA, a.A, "m");
  a.eta = blocks_from_json(C, detail::field(j, "eta", "algebra"), I, a.A, "eta");
  if (j.contains("delta")) a.delta = blocks_from_json(C, j["delta"], a.A, AA, "delta");
  if (j.contains("eps")) a.eps = blocks_from_json(C, j["eps"], a.A, I, "eps");
  validate_algebra(C, a);
  return a;
}

// ---------------------------------------------------------------- reports

inline json report_to_json(const Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"max_residual", c.max_residual}, {"witness", c.witness}});
  json scalars = json::object();
  for (const auto& [k, v] : r.scalars) scalars[k] = complex_to_json(v);
  return {{"subject", r.subject}, {"pass", r.pass()}, {"checks", checks}, {"scalars", scalars}, {"notes", r.notes}};
}

inline Report report_from_json(const json& j) {
  detail::require_keys(j, {"subject", "pass", "checks", "scalars", "notes"}, "report");
  Report r;
  r.subject = j.value("subject", "");
  for (const auto& c : detail::field(j, "checks", "report")) {
    detail::require_keys(c, {"name", "pass", "max_residual", "witness"}, "check");
    Check k;
    k.name = detail::field(c, "name", "check").get<std::string>();
    k.pass = detail::field(c, "pass", "check").get<bool>();
    const json& res = detail::field(c, "max_residual", "check");
    k.max_residual = res.is_number() ? res.get<double>() : std::numeric_limits<double>::infinity();
    k.witness = c.value("witness", "");
    r.checks.push_back(std::move(k));
  }
  if (j.contains("scalars"))
    for (auto it = j["scalars"].begin(); it != j["scalars"].end(); ++it)
      r.scalars[it.key()] = complex_from_json(it.value(), "scalar " + it.key());
  if (j.contains("notes")) r.notes = j["notes"].get<std::vector<std::string>>();
  return r;
}

/// Verdicts must match exactly; residuals within `residual_tol` (absolute) when both finite.
inline std::vector<std::string> compare_reports(const Report& expected, const Report& actual, double residual_tol = 1e-9) {
  std::vector<std::string> diffs;
  if (expected.checks.size() != actual.checks.size())
    diffs.push_back("check count " + std::to_string(expected.checks.size()) + " vs " + std::to_string(actual.checks.size()));
  for (const auto& e : expected.checks) {
    const Check* a = actual.find(e.name);
    if (!a) {
      diffs.push_back("missing check " + e.name);
      continue;
    }
    if (a->pass != e.pass) diffs.push_back("verdict of " + e.name + " changed");
    if (std::isfinite(e.max_residual) && std::isfinite(a->max_residual) &&
        std::abs(e.max_residual - a->max_residual) > residual_tol)
      diffs.push_back("residual of " + e.name + " moved by " + std::to_string(std::abs(e.max_residual - a->max_residual)));
  }
  return diffs;
}

// ---------------------------------------------------------------- files

inline json read_json(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + p.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, p.string() + ": " + e.what());
  }
}

inline void write_json(const std::filesystem::path& p, const json& j) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + p.string());
  out << j.dump(2) << "\n";
}

// json::exception from get<> on a wrong type is reported as a ParseError.
template <class F>
auto parse_guard(const std::string& where, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, where + ": " + e.what());
  }
}

inline CategoryData load_category(const std::filesystem::path& p) {
  const json j = read_json(p);
  return parse_guard(p.string(), [&] { return category_from_json(j, p.stem().string()); });
}

inline AlgebraPresentation load_algebra(const Category& C, const std::filesystem::path& p) {
  const json j = read_json(p);
  return parse_guard(p.string(), [&] { return algebra_from_json(C, j, p.stem().string()); });
}

inline Morphism load_morphism(const Category& C, const std::filesystem::path& p) {
  const json j = read_json(p);
  return parse_guard(p.string(), [&] { return morphism_from_json(C, j); });
}

/// Cardy triple manifest: {"category", "A", "B", "iota"} as paths relative to the manifest.
/// A lives in the category; B and iota live in its doubled product.
struct CardyManifest {
  std::filesystem::path category, A, B, iota;
};

inline CardyManifest load_manifest(const std::filesystem::path& p) {
  const json j = read_json(p);
  return parse_guard(p.string(), [&] {
    detail::require_keys(j, {"category", "A", "B", "iota"}, "manifest");
    const auto dir = p.parent_path();
    auto path = [&](const char* key) { return dir / detail::field(j, key, "manifest").get<std::string>(); };
    return CardyManifest{path("category"), path("A"), path("B"), path("iota")};
  });
}

inline CardyTriple load_cardy_triple(const CardyManifest& m) {
  Doubled D(std::make_shared<const CategoryData>(load_category(m.category)));
  AlgebraPresentation A = load_algebra(*D.C, m.A);
  AlgebraPresentation B = load_algebra(*D.P, m.B);
  Morphism iota = load_morphism(*D.P, m.iota);
  return CardyTriple{std::move(D), std::move(A), std::move(B), std::move(iota), std::nullopt};
}

/// Human-readable rendering: one line per check, failing witnesses indented.
inline std::string render_report(const Report& r) {
  std::ostringstream os;
  os << r.subject << ": " << (r.pass() ? "PASS" : "FAIL") << "\n";
  for (const auto& c : r.checks) {
    os << "  " << (c.pass ? "pass " : "FAIL ") << c.name;
    if (c.max_residual != 0.0) os << "  residual " << c.max_residual;
    os << "\n";
    if (!c.pass && !c.witness.empty()) os << "       " << c.witness << "\n";
  }
  for (const auto& [k, v] : r.scalars) os << "  " << k << " = " << format_complex(v) << "\n";
  for (const auto& n : r.notes) os << "  note: " << n << "\n";
  return os.str();
}

}  // namespace modcat::io

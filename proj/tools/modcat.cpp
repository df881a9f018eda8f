// modcat: verify skeletal modular category data, algebra objects, full centres and
// Cardy algebras from JSON files.
//
// Exit codes: 0 all checks pass, 1 a check fails, 2 input error.

#include "modcat/modcat.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace fs = std::filesystem;
using namespace modcat;
using io::json;

namespace {

struct Globals {
  std::optional<double> tol;
  bool json = false;
  std::uint64_t seed = 1;
};

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::ParseError:
    case ErrorKind::ShapeMismatch:
    case ErrorKind::ObjectMismatch:
    case ErrorKind::InvalidData:
    case ErrorKind::DegenerateDuality:
    case ErrorKind::FactorMismatch:
      return 2;
    default:
      return 1;
  }
}

std::shared_ptr<const CategoryData> load(const Globals& g, const fs::path& p) {
  CategoryData cat = io::load_category(p);
  if (g.tol) cat.tol.abs_tol = cat.tol.rel_tol = *g.tol;
  return std::make_shared<const CategoryData>(std::move(cat));
}

int emit(const Globals& g, const Report& r, json extra = json::object()) {
  if (g.json) {
    json j = io::report_to_json(r);
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << io::render_report(r);
  }
  return r.pass() ? 0 : 1;
}

std::string multiplicities(const CategoryData& cat, const Object& x) {
  std::string s = "{";
  bool first = true;
  for (int k = 0; k < cat.rank(); ++k)
    if (int n = x.leaf(0)[k]) {
      s += std::string(first ? "" : ", ") + "(" + cat.ring.name(k) + "):" + std::to_string(n);
      first = false;
    }
  return s + "}";
}

json multiplicities_json(const CategoryData& cat, const Object& x) {
  json j = json::object();
  for (int k = 0; k < cat.rank(); ++k)
    if (int n = x.leaf(0)[k]) j[cat.ring.name(k)] = n;
  return j;
}

int verify_category_cmd(const Globals& g, const std::string& path) {
  const Category C(load(g, path));
  return emit(g, verify_category(C));
}

int check_algebra_cmd(const Globals& g, const std::string& cat, const std::string& alg,
                      const std::vector<std::string>& props) {
  for (const auto& p : props)
    if (std::find(property_names().begin(), property_names().end(), p) == property_names().end())
      throw Error(ErrorKind::ParseError, "unknown property '" + p + "'");
  const Category C(load(g, cat));
  const AlgebraPresentation a = io::load_algebra(C, alg);
  return emit(g, check_all_properties(C, a, props, g.seed));
}

int full_centre_cmd(const Globals& g, const std::string& cat, const std::string& alg, const std::string& out) {
  Doubled D(load(g, cat));
  const AlgebraPresentation a = with_coalgebra(*D.C, io::load_algebra(*D.C, alg));
  Report pre;
  pre.subject = a.name;
  pre.merge(is_symmetric(*D.C, a));
  pre.merge(is_special(*D.C, a));
  if (!pre.pass()) {
    std::cerr << "full-centre needs a special symmetric Frobenius algebra\n";
    return emit(g, pre);
  }
  const CardyTriple t = canonical_cardy(D, a);
  const Category& P = *D.P;
  Report rep;
  rep.subject = t.B.name;
  rep.merge(check_unit_assoc(P, t.B));
  rep.merge(check_frobenius(P, t.B));
  rep.merge(is_symmetric(P, t.B));
  rep.merge(is_commutative(P, t.B));
  rep.scalars["dim"] = P.dimension(t.B.A);
  rep.scalars["global_dimension"] = global_dimension(*D.C);
  if (!out.empty()) {
    const auto files = io::write_canonical_cardy(t, cat, out);
    rep.notes.push_back("wrote " + files.product.string() + ", " + files.Z.string() + ", " + files.Z_star.string() +
                        ", " + files.iota.string() + ", " + files.manifest.string());
  }
  if (!g.json) std::cout << "Z(" << a.name << ") = " << multiplicities(*D.product.data, t.B.A) << "\n";
  return emit(g, rep, {{"multiplicities", multiplicities_json(*D.product.data, t.B.A)}});
}

/// Human summary names each Cardy-algebra condition in words.
std::string cardy_summary(const Report& r) {
  const std::vector<std::pair<std::string, std::string>> groups = {
      {"B_", "bulk algebra B"},        {"A_", "boundary algebra A"}, {"iota.", "iota algebra map"},
      {"centre.", "centre condition"}, {"cardy.", "Cardy condition"}, {"modinv_", "modular invariance"}};
  std::ostringstream os;
  for (const auto& [prefix, label] : groups) {
    bool any = false, ok = true;
    for (const auto& c : r.checks)
      if (c.name.rfind(prefix, 0) == 0) {
        any = true;
        ok = ok && c.pass;
      }
    if (any) os << (ok ? "pass " : "FAIL ") << label << "\n";
  }
  return os.str();
}

int cardy_cmd(const Globals& g, const std::vector<std::string>& args, bool canonical) {
  std::optional<CardyTriple> t;
  if (canonical) {
    if (args.size() != 2) throw Error(ErrorKind::ParseError, "cardy --canonical expects CATEGORY ALGEBRA");
    Doubled D(load(g, args[0]));
    t = canonical_cardy(D, io::load_algebra(*D.C, args[1]));
  } else {
    if (args.size() != 1) throw Error(ErrorKind::ParseError, "cardy expects a manifest (or --canonical CATEGORY ALGEBRA)");
    t = io::load_cardy_triple(io::load_manifest(args[0]));
    if (g.tol) {
      CategoryData cat = t->ctx.C->data();
      cat.tol.abs_tol = cat.tol.rel_tol = *g.tol;
      t->ctx = Doubled(std::make_shared<const CategoryData>(std::move(cat)));
      t->RA.reset();
    }
  }
  const Report r = verify_cardy_algebra(*t);
  if (!g.json) std::cout << cardy_summary(r);
  return emit(g, r);
}

int product_cmd(const Globals& g, const std::string& first, const std::string& second, bool plain,
                const std::string& out) {
  const auto C = load(g, first);
  const auto D = second.empty() ? C : load(g, second);
  const ProductCategory P = deligne_product(C, D, !plain);
  const json j = io::category_to_json(*P.data);
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  io::write_json(out, j);
  const Category PC(P.data);
  return emit(g, verify_category(PC));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification toolkit for modular tensor category data, Frobenius algebras and Cardy algebras"};
  app.require_subcommand(1);
  Globals g;
  double tol = 0.0;
  auto* tol_opt = app.add_option("--tol", tol, "absolute and relative tolerance override")->check(CLI::PositiveNumber);
  app.add_flag("--json", g.json, "emit the machine-readable report");
  app.add_option("--seed", g.seed, "seed for randomized checks");

  std::string cat_path, alg_path, out, second;
  std::vector<std::string> props, cardy_args;
  bool canonical = false, plain = false;

  auto* vc = app.add_subcommand("verify-category", "pentagon, hexagon, dimension and modularity checks");
  vc->add_option("category", cat_path)->required();

  auto* ca = app.add_subcommand("check-algebra", "Frobenius-algebra predicates");
  ca->add_option("category", cat_path)->required();
  ca->add_option("algebra", alg_path)->required();
  ca->add_option("--properties", props, "subset of: algebra frobenius symmetric special commutative haploid simple star")
      ->delimiter(',');

  auto* fc = app.add_subcommand("full-centre", "full centre Z(A) in C+ x C-");
  fc->add_option("category", cat_path)->required();
  fc->add_option("algebra", alg_path)->required();
  fc->add_option("--out", out, "directory for the product category, Z(A), e and a manifest");

  auto* cy = app.add_subcommand("cardy", "Cardy-algebra verification");
  cy->add_option("inputs", cardy_args, "MANIFEST, or CATEGORY ALGEBRA with --canonical")->required();
  cy->add_flag("--canonical", canonical, "build (A | Z(A), e) from A");

  auto* pr = app.add_subcommand("product", "Deligne product C+ x C- (or C x D-)");
  pr->add_option("category", cat_path)->required();
  pr->add_option("second", second, "second factor (default: the first)");
  pr->add_flag("--plain", plain, "do not reverse the braiding of the second factor");
  pr->add_option("--out", out, "output file; the product is verified when given");

  for (auto* sub : {vc, ca, fc, cy, pr}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (*tol_opt) g.tol = tol;

  try {
    if (*vc) return verify_category_cmd(g, cat_path);
    if (*ca) return check_algebra_cmd(g, cat_path, alg_path, props);
    if (*fc) return full_centre_cmd(g, cat_path, alg_path, out);
    if (*cy) return cardy_cmd(g, cardy_args, canonical);
    if (*pr) return product_cmd(g, cat_path, second, plain, out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

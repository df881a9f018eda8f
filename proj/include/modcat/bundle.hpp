#pragma once

// Bundle entries: a category file, its algebra files, Cardy manifests and the golden
// reports they are expected to reproduce.

#include "modcat/io.hpp"

namespace modcat::io {

struct BundleEntry {
  std::string name;
  std::filesystem::path category;
  std::vector<std::filesystem::path> algebras;
  std::vector<std::filesystem::path> manifests;
  std::filesystem::path golden;
};

inline BundleEntry load_bundle(const std::filesystem::path& p) {
  const json j = read_json(p);
  return parse_guard(p.string(), [&] {
    detail::require_keys(j, {"name", "category", "algebras", "manifests", "golden"}, "bundle");
    const auto dir = p.parent_path();
    BundleEntry b;
    b.name = detail::field(j, "name", "bundle").get<std::string>();
    b.category = dir / detail::field(j, "category", "bundle").get<std::string>();
    for (const auto& a : j.value("algebras", json::array())) b.algebras.push_back(dir / a.get<std::string>());
    for (const auto& m : j.value("manifests", json::array())) b.manifests.push_back(dir / m.get<std::string>());
    b.golden = dir / detail::field(j, "golden", "bundle").get<std::string>();
    return b;
  });
}

inline json bundle_to_json(const BundleEntry& b, const std::filesystem::path& dir) {
  auto rel = [&](const std::filesystem::path& p) { return std::filesystem::relative(p, dir).generic_string(); };
  json algebras = json::array(), manifests = json::array();
  for (const auto& a : b.algebras) algebras.push_back(rel(a));
  for (const auto& m : b.manifests) manifests.push_back(rel(m));
  return {{"name", b.name}, {"category", rel(b.category)}, {"algebras", algebras}, {"manifests", manifests},
          {"golden", rel(b.golden)}};
}

/// Every report of a bundle keyed by "category", "algebra:<stem>" and "cardy:<name>", where a
/// manifest called manifest.json is named after its directory.
inline std::map<std::string, Report> compute_bundle_reports(const BundleEntry& b, std::uint64_t seed = 1) {
  std::map<std::string, Report> out;
  auto data = std::make_shared<const CategoryData>(load_category(b.category));
  const Category C(data);
  out["category"] = verify_category(C);
  for (const auto& a : b.algebras) out["algebra:" + a.stem().string()] = check_all_properties(C, load_algebra(C, a), {}, seed);
  for (const auto& m : b.manifests) {
    CardyTriple t = load_cardy_triple(load_manifest(m));
    const std::string key = m.stem() == "manifest" ? m.parent_path().filename().string() : m.stem().string();
    out["cardy:" + key] = verify_cardy_algebra(t);
  }
  return out;
}

inline json reports_to_json(const std::map<std::string, Report>& reports) {
  json j = json::object();
  for (const auto& [k, r] : reports) j[k] = report_to_json(r);
  return j;
}

inline std::map<std::string, Report> reports_from_json(const json& j) {
  std::map<std::string, Report> out;
  for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = report_from_json(it.value());
  return out;
}

/// Files written for a canonical Cardy triple (A | Z(A), e).
struct CentreFiles {
  std::filesystem::path product, A, Z, Z_star, iota, manifest;
};

/// Writes the doubled category, the normalised A, Z(A), e and a manifest into `dir`.
/// Z_star.json holds Z(A) rescaled to m* = Delta; the manifest uses Z.json.
/// The manifest refers to `category_file`, which must hold C.
inline CentreFiles write_canonical_cardy(const CardyTriple& t, const std::filesystem::path& category_file,
                                         const std::filesystem::path& dir) {
  CentreFiles f{dir / "product.json", dir / "A.json",    dir / "Z.json",
                dir / "Z_star.json",  dir / "iota.json", dir / "manifest.json"};
  write_json(f.product, category_to_json(*t.ctx.product.data));
  write_json(f.A, algebra_to_json(t.A));
  write_json(f.Z, algebra_to_json(t.B));
  write_json(f.Z_star, algebra_to_json(star_normalize(*t.ctx.P, t.B)));
  write_json(f.iota, morphism_to_json(t.iota));
  auto rel = [&](const std::filesystem::path& p) {
    return std::filesystem::relative(std::filesystem::absolute(p), std::filesystem::absolute(dir)).generic_string();
  };
  write_json(f.manifest, {{"category", rel(category_file)}, {"A", "A.json"}, {"B", "Z.json"}, {"iota", "iota.json"}});
  return f;
}

}  // namespace modcat::io

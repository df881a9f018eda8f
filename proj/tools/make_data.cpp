// Regenerates data/: category and algebra files, canonical Cardy triples, negative
// inputs, bundle entries and golden reports.
//
//   modcat_make_data [--out data] [--golden-only]

#include "modcat/modcat.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace fs = std::filesystem;
using namespace modcat;
using io::json;

namespace {

struct AlgebraEntry {
  std::string category;
  std::vector<std::string> algebras;       // written under algebras/<category>/
  std::vector<std::string> centre_inputs;  // algebras whose canonical Cardy triple is bundled
};

AlgebraPresentation build_algebra(const Category& C, const std::string& name) {
  if (name == "unit") return unit_algebra(C);
  if (name == "matrix2") return bundled::matrix2(C);
  if (name == "matrix2_twisted") return bundled::matrix2_twisted(C);
  if (name == "dual_numbers") return bundled::dual_numbers(C);
  if (name == "direct_sum") return bundled::direct_sum_unit(C);
  if (name.rfind("end_", 0) == 0) {
    const auto i = C.ring().find(name.substr(4));
    if (!i) throw std::runtime_error("no label " + name.substr(4));
    return bundled::end_simple(C, *i);
  }
  throw std::runtime_error("unknown algebra " + name);
}

void write_negative_categories(const fs::path& dir) {
  CategoryData badf = bundled::fibonacci();
  badf.name = "fibonacci_bad_F";
  FBlock blk = badf.f(1, 1, 1, 1);
  blk.matrix(0, 0) += 1e-2;
  badf.set_f(1, 1, 1, 1, blk);
  badf.finalize();
  io::write_json(dir / "fibonacci_bad_F.json", io::category_to_json(badf));

  CategoryData badr = bundled::ising();
  badr.name = "ising_bad_R";
  Matrix r = badr.r(1, 1, 0);
  r(0, 0) *= std::exp(Complex(0.0, 0.05));
  badr.set_r(1, 1, 0, r);
  badr.finalize();
  io::write_json(dir / "ising_bad_R.json", io::category_to_json(badr));

  json unknown = io::category_to_json(bundled::semion());
  unknown["braid_group"] = "B3";
  io::write_json(dir / "malformed_unknown_field.json", unknown);

  json badc = io::category_to_json(bundled::semion());
  badc["theta"][1] = json::array({0.0});
  io::write_json(dir / "malformed_complex.json", badc);

  json shape = io::category_to_json(bundled::fibonacci());
  for (auto& F : shape["F"])
    if (F["a"] == 1 && F["b"] == 1 && F["c"] == 1 && F["d"] == 1) F["matrix"].erase(F["matrix"].size() - 1);
  io::write_json(dir / "malformed_shape.json", shape);

  std::ofstream(dir / "malformed_syntax.json") << "{ \"labels\": [ { \"name\": \"1\", \"dual\": 0 }\n";
}

/// Cardy triples that must fail, each for a named reason.
std::vector<fs::path> write_negative_triples(const fs::path& data, const fs::path& out) {
  std::vector<fs::path> manifests;
  auto write = [&](const std::string& name, const fs::path& cat_file, const fs::path& a_file, const AlgebraPresentation& B,
                   const Morphism& iota) {
    const fs::path dir = out / name;
    io::write_json(dir / "B.json", io::algebra_to_json(B));
    io::write_json(dir / "iota.json", io::morphism_to_json(iota));
    io::write_json(dir / "manifest.json", {{"category", fs::relative(cat_file, dir).generic_string()},
                                           {"A", fs::relative(a_file, dir).generic_string()},
                                           {"B", "B.json"},
                                           {"iota", "iota.json"}});
    manifests.push_back(dir / "manifest.json");
  };

  {
    const fs::path cat_file = data / "categories" / "vec.json";
    const fs::path a_file = data / "centres" / "vec_matrix2" / "A.json";
    CardyTriple t = io::load_cardy_triple(io::load_manifest(data / "centres" / "vec_matrix2" / "manifest.json"));
    write("vec_matrix2_scaled", cat_file, a_file, t.B, 2.0 * t.iota);
    // Cyclic shift of the four copies of the unit in R(A) = A: iota(1) leaves the centre.
    const Category& P = *t.ctx.P;
    Matrix shift = Matrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) shift((i + 1) % 4, i) = 1.0;
    const Morphism U = P.make(t.R().A, t.R().A, {shift});
    write("vec_matrix2_noncentral", cat_file, a_file, t.B, P.compose(U, t.iota));
  }
  {
    const fs::path cat_file = data / "categories" / "fibonacci.json";
    const fs::path a_file = data / "centres" / "fibonacci_unit" / "A.json";
    CardyTriple t = io::load_cardy_triple(io::load_manifest(data / "centres" / "fibonacci_unit" / "manifest.json"));
    AlgebraPresentation B = with_coalgebra(*t.ctx.P, unit_algebra(*t.ctx.P));
    B.name = "trivial_bulk";
    write("fibonacci_trivial_bulk", cat_file, a_file, B, t.R().eta);
  }
  return manifests;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regenerate the bundled data directory"};
  std::string out = "data";
  bool golden_only = false;
  app.add_option("--out", out, "output directory");
  app.add_flag("--golden-only", golden_only, "only recompute golden reports from existing files");
  CLI11_PARSE(app, argc, argv);
  const fs::path data = fs::absolute(out);

  const std::vector<AlgebraEntry> entries = {
      {"vec", {"unit", "matrix2", "matrix2_twisted", "dual_numbers", "direct_sum"}, {"unit", "matrix2"}},
      {"fibonacci", {"unit", "end_tau"}, {"unit", "end_tau"}},
      {"ising", {"unit", "end_sigma"}, {"unit", "end_sigma"}},
      {"semion", {"unit"}, {"unit"}},
      {"z2_symmetric", {"unit"}, {}},
      {"z3", {"unit"}, {"unit"}},
  };

  try {
    std::map<std::string, io::BundleEntry> bundles;
    for (const auto& s : entries) {
      io::BundleEntry b;
      b.name = s.category;
      b.category = data / "categories" / (s.category + ".json");
      b.golden = data / "golden" / (s.category + ".json");
      for (const auto& a : s.algebras) b.algebras.push_back(data / "algebras" / s.category / (a + ".json"));
      for (const auto& a : s.centre_inputs)
        b.manifests.push_back(data / "centres" / (s.category + "_" + a) / "manifest.json");
      bundles[s.category] = b;
      if (golden_only) continue;

      auto cat = std::make_shared<const CategoryData>(bundled::by_name(s.category));
      io::write_json(b.category, io::category_to_json(*cat));
      const Category C(cat);
      for (std::size_t i = 0; i < s.algebras.size(); ++i) {
        AlgebraPresentation a = build_algebra(C, s.algebras[i]);
        a.name = s.algebras[i];
        io::write_json(b.algebras[i], io::algebra_to_json(with_coalgebra(C, a)));
      }
      if (!s.centre_inputs.empty()) {
        Doubled D(cat);
        for (const auto& a : s.centre_inputs) {
          const CardyTriple t = canonical_cardy(D, io::load_algebra(*D.C, data / "algebras" / s.category / (a + ".json")));
          io::write_canonical_cardy(t, b.category, data / "centres" / (s.category + "_" + a));
        }
      }
    }

    if (!golden_only) {
      write_negative_categories(data / "negatives");
      for (const auto& m : write_negative_triples(data, data / "negatives" / "cardy")) {
        const std::string cat = io::load_manifest(m).category.stem().string();
        bundles[cat].manifests.push_back(m);
      }
    } else {
      for (auto& [name, b] : bundles) b = io::load_bundle(data / "bundles" / (name + ".json"));
    }

    for (const auto& [name, b] : bundles) {
      io::write_json(data / "bundles" / (name + ".json"), io::bundle_to_json(b, data / "bundles"));
      const auto reports = io::compute_bundle_reports(io::load_bundle(data / "bundles" / (name + ".json")));
      io::write_json(b.golden, io::reports_to_json(reports));
      int failing = 0;
      std::string names;
      for (const auto& [k, r] : reports)
        if (!r.pass()) {
          ++failing;
          names += " " + k;
        }
      std::cout << name << ": " << reports.size() << " reports, " << failing << " failing" << names << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

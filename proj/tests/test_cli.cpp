#include "support.hpp"

#include <sys/wait.h>

#include <cstdio>

using namespace modcat;
using namespace modcat::testing;
namespace fs = std::filesystem;
using io::json;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

std::string quote(const std::string& s) { return "'" + s + "'"; }

CliRun run(const std::string& args) {
  const std::string cmd = quote(MODCAT_CLI) + " " + args + " 2>&1";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string cat(const std::string& name) { return quote((data_dir() / "categories" / (name + ".json")).string()); }
std::string alg(const std::string& c, const std::string& a) {
  return quote((data_dir() / "algebras" / c / (a + ".json")).string());
}

struct TempDir {
  fs::path path = fs::temp_directory_path() / ("modcat_cli_" + std::to_string(::getpid()));
  TempDir() { fs::create_directories(path); }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST(Cli, VerifyCategoryPasses) {
  const CliRun r = run("verify-category " + cat("fibonacci"));
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("fibonacci: PASS"), std::string::npos) << r.out;
}

TEST(Cli, NonModularCategoryExitsOne) {
  const CliRun r = run("verify-category " + cat("z2_symmetric"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("not modular: transparent label g"), std::string::npos) << r.out;
}

TEST(Cli, PerturbedCategoryExitsOne) {
  const CliRun r = run("verify-category " + quote((data_dir() / "negatives" / "fibonacci_bad_F.json").string()));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL pentagon"), std::string::npos) << r.out;
}

TEST(Cli, InputErrorsExitTwo) {
  for (const auto* f : {"malformed_syntax", "malformed_unknown_field", "malformed_complex", "malformed_shape"}) {
    const CliRun r = run("verify-category " + quote((data_dir() / "negatives" / (std::string(f) + ".json")).string()));
    EXPECT_EQ(r.code, 2) << f << "\n" << r.out;
    EXPECT_NE(r.out.find("error:"), std::string::npos) << f;
  }
  EXPECT_EQ(run("verify-category /nonexistent/file.json").code, 2);
  EXPECT_EQ(run("no-such-command").code, 2);
  EXPECT_EQ(run("--tol -1 verify-category " + cat("vec")).code, 2);
  EXPECT_EQ(run("check-algebra " + cat("vec") + " " + alg("vec", "matrix2") + " --properties nonsense").code, 2);
}

TEST(Cli, CheckAlgebraSelectsProperties) {
  EXPECT_EQ(run("check-algebra " + cat("vec") + " " + alg("vec", "matrix2") + " --properties symmetric,special").code, 0);
  const CliRun r = run("check-algebra " + cat("vec") + " " + alg("vec", "matrix2") + " --properties commutative");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL commutative"), std::string::npos) << r.out;
}

TEST(Cli, JsonOutputIsAReport) {
  const CliRun r = run("--json check-algebra " + cat("fibonacci") + " " + alg("fibonacci", "end_tau"));
  EXPECT_EQ(r.code, 1);
  const json j = json::parse(r.out);
  EXPECT_FALSE(j.at("pass").get<bool>());
  const Report rep = io::report_from_json(j);
  EXPECT_FALSE(rep.passed("commutative"));
  EXPECT_TRUE(rep.passed("symmetric"));
}

TEST(Cli, FullCentrePrintsMultiplicitiesAndRoundTrips) {
  TempDir tmp;
  const CliRun r = run("full-centre " + cat("fibonacci") + " " + alg("fibonacci", "unit") + " --out " +
                    quote(tmp.path.string()));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("Z(unit) = {(1|1):1, (tau|tau):1}"), std::string::npos) << r.out;
  for (const auto* f : {"product.json", "A.json", "Z.json", "Z_star.json", "iota.json", "manifest.json"})
    EXPECT_TRUE(fs::exists(tmp.path / f)) << f;

  const CliRun c = run("cardy " + quote((tmp.path / "manifest.json").string()));
  EXPECT_EQ(c.code, 0) << c.out;
  EXPECT_NE(c.out.find("pass Cardy condition"), std::string::npos) << c.out;
  EXPECT_NE(c.out.find("pass modular invariance"), std::string::npos) << c.out;

  const CliRun s = run("check-algebra " + quote((tmp.path / "product.json").string()) + " " +
                    quote((tmp.path / "Z_star.json").string()) + " --properties algebra,frobenius,commutative,star");
  EXPECT_EQ(s.code, 0) << s.out;
}

TEST(Cli, FullCentreOfMatrixAlgebraIsTrivial) {
  const CliRun r = run("--json full-centre " + cat("vec") + " " + alg("vec", "matrix2"));
  EXPECT_EQ(r.code, 0) << r.out;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("multiplicities"), json({{"1|1", 1}}));
}

TEST(Cli, FullCentreNeedsSpecialSymmetric) {
  const CliRun r = run("full-centre " + cat("vec") + " " + alg("vec", "dual_numbers"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("special symmetric"), std::string::npos) << r.out;
}

TEST(Cli, CardyNegativesNameTheFailingCondition) {
  const auto manifest = [](const std::string& n) {
    return quote((data_dir() / "negatives" / "cardy" / n / "manifest.json").string());
  };
  const CliRun scaled = run("cardy " + manifest("vec_matrix2_scaled"));
  EXPECT_EQ(scaled.code, 1);
  EXPECT_NE(scaled.out.find("FAIL Cardy condition"), std::string::npos) << scaled.out;
  const CliRun nc = run("cardy " + manifest("vec_matrix2_noncentral"));
  EXPECT_EQ(nc.code, 1);
  EXPECT_NE(nc.out.find("FAIL centre condition"), std::string::npos) << nc.out;
  const CliRun tb = run("cardy " + manifest("fibonacci_trivial_bulk"));
  EXPECT_EQ(tb.code, 1);
  EXPECT_NE(tb.out.find("FAIL modular invariance"), std::string::npos) << tb.out;
}

TEST(Cli, CanonicalCardy) {
  const CliRun r = run("cardy --canonical " + cat("ising") + " " + alg("ising", "end_sigma"));
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(run("cardy --canonical " + cat("ising")).code, 2);
}

TEST(Cli, ProductIsWrittenAndVerified) {
  TempDir tmp;
  const fs::path out = tmp.path / "semion_double.json";
  const CliRun r = run("product " + cat("semion") + " --out " + quote(out.string()));
  EXPECT_EQ(r.code, 0) << r.out;
  const CategoryData d = io::load_category(out);
  EXPECT_EQ(d.rank(), 4);
  const CliRun plain = run("product " + cat("semion") + " " + cat("fibonacci") + " --plain");
  EXPECT_EQ(plain.code, 0);
  EXPECT_EQ(io::category_from_json(json::parse(plain.out)).rank(), 4);
}

TEST(Cli, ToleranceOverrideApplies) {
  const std::string bad = quote((data_dir() / "negatives" / "ising_bad_R.json").string());
  EXPECT_EQ(run("verify-category " + bad).code, 1);
  EXPECT_EQ(run("--tol 0.1 verify-category " + bad).code, 0);
}

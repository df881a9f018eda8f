#include "support.hpp"

using namespace modcat;
using namespace modcat::testing;

namespace {

// Multiplicity-free F and R entries read straight from the data.
Complex F(const CategoryData& c, int a, int b, int cc, int d, int e, int f) {
  if (!c.ring(a, b, e) || !c.ring(e, cc, d) || !c.ring(b, cc, f) || !c.ring(a, f, d)) return 0.0;
  const FBlock& blk = c.f(a, b, cc, d);
  return blk.matrix(blk.row_index({e, 0, 0}), blk.col_index({f, 0, 0}));
}

Complex R(const CategoryData& c, int a, int b, int e) { return c.ring(a, b, e) ? c.r(a, b, e)(0, 0) : 0.0; }

// Pentagon in the textbook component form, independent of the engine:
//   F^{fcd}_e[g,l] F^{abl}_e[f,k] = sum_h F^{abc}_g[f,h] F^{ahd}_e[g,k] F^{bcd}_k[h,l]
double pentagon_oracle(const CategoryData& c) {
  const int n = c.rank();
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int cc = 0; cc < n; ++cc)
        for (int d = 0; d < n; ++d)
          for (int e = 0; e < n; ++e)
            for (int f = 0; f < n; ++f)
              for (int g = 0; g < n; ++g)
                for (int k = 0; k < n; ++k)
                  for (int l = 0; l < n; ++l) {
                    if (!c.ring(a, b, f) || !c.ring(f, cc, g) || !c.ring(g, d, e)) continue;
                    if (!c.ring(cc, d, l) || !c.ring(b, l, k) || !c.ring(a, k, e)) continue;
                    const Complex lhs = F(c, f, cc, d, e, g, l) * F(c, a, b, l, e, f, k);
                    Complex rhs = 0.0;
                    for (int h = 0; h < n; ++h) rhs += F(c, a, b, cc, g, f, h) * F(c, a, h, d, e, g, k) * F(c, b, cc, d, k, h, l);
                    worst = std::max(worst, std::abs(lhs - rhs));
                  }
  return worst;
}

// Hexagon in component form:
//   R^{ca}_e F^{acb}_d[e,g] R^{cb}_g = sum_f F^{cab}_d[e,f] R^{cf}_d F^{abc}_d[f,g]
double hexagon_oracle(const CategoryData& c) {
  const int n = c.rank();
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int cc = 0; cc < n; ++cc)
        for (int d = 0; d < n; ++d)
          for (int e = 0; e < n; ++e)
            for (int g = 0; g < n; ++g) {
              if (!c.ring(cc, a, e) || !c.ring(e, b, d) || !c.ring(a, g, d) || !c.ring(cc, b, g)) continue;
              const Complex lhs = R(c, cc, a, e) * F(c, a, cc, b, d, e, g) * R(c, cc, b, g);
              Complex rhs = 0.0;
              for (int f = 0; f < n; ++f) rhs += F(c, cc, a, b, d, e, f) * R(c, cc, f, d) * F(c, a, b, cc, d, f, g);
              worst = std::max(worst, std::abs(lhs - rhs));
            }
  return worst;
}

std::vector<double> power_iteration_dims(const FusionRing& N) {
  std::vector<double> out;
  for (int i = 0; i < N.rank(); ++i) {
    Eigen::VectorXd v = Eigen::VectorXd::Ones(N.rank());
    double lambda = 0.0;
    for (int it = 0; it < 500; ++it) {
      Eigen::VectorXd w = Eigen::VectorXd::Zero(N.rank());
      for (int j = 0; j < N.rank(); ++j)
        for (int k = 0; k < N.rank(); ++k) w(k) += N(i, j, k) * v(j);
      lambda = w.norm() / v.norm();
      v = w / w.norm();
    }
    out.push_back(lambda);
  }
  return out;
}

}  // namespace

TEST(FusionData, BundledDataPassesPentagonBelowTolerance) {
  for (const auto& name : bundled::names()) {
    const CategoryData c = bundled::by_name(name);
    const Report r = verify_pentagon(c);
    EXPECT_TRUE(r.pass()) << name;
    EXPECT_LE(r.residual("pentagon"), 1e-9) << name;
  }
}

TEST(FusionData, EnginePentagonAgreesWithComponentFormula) {
  for (const auto& name : bundled::names()) {
    const CategoryData c = bundled::by_name(name);
    EXPECT_LE(pentagon_oracle(c), 1e-12) << name;
  }
}

TEST(FusionData, BundledDataSatisfiesComponentHexagon) {
  for (const auto& name : bundled::names()) EXPECT_LE(hexagon_oracle(bundled::by_name(name)), 1e-12) << name;
}

TEST(FusionData, PerturbedFibonacciFFailsPentagonClearly) {
  const CategoryData bad = io::load_category(data_dir() / "negatives" / "fibonacci_bad_F.json");
  const Report r = verify_pentagon(bad);
  EXPECT_FALSE(r.pass());
  EXPECT_GE(r.residual("pentagon"), 1e-3);
  EXPECT_GE(pentagon_oracle(bad), 1e-3);
  EXPECT_NE(r.checks[0].witness.find("tau"), std::string::npos);
}

TEST(FusionData, PerturbedIsingRFailsComponentHexagon) {
  const CategoryData bad = io::load_category(data_dir() / "negatives" / "ising_bad_R.json");
  EXPECT_TRUE(verify_pentagon(bad).pass());
  EXPECT_GE(hexagon_oracle(bad), 1e-3);
}

TEST(FusionData, FibonacciFMatrixHasGoldenRatioEntries) {
  const CategoryData c = bundled::fibonacci();
  const double p = phi();
  EXPECT_NEAR(std::abs(F(c, 1, 1, 1, 1, 0, 0)), 1.0 / p, 1e-12);
  EXPECT_NEAR(std::abs(F(c, 1, 1, 1, 1, 0, 1)), 1.0 / std::sqrt(p), 1e-12);
  EXPECT_NEAR(std::abs(F(c, 1, 1, 1, 1, 1, 1)), 1.0 / p, 1e-12);
  // F^{tau tau tau}_tau is an involution.
  const Matrix& m = c.f(1, 1, 1, 1).matrix;
  EXPECT_LE(max_abs(m * m - Matrix::Identity(2, 2)), 1e-12);
}

TEST(FusionData, FusionRingIsAssociativeAndCommutative) {
  for (const auto& name : bundled::names()) {
    const FusionRing& N = bundled::by_name(name).ring;
    const int n = N.rank();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        for (int c = 0; c < n; ++c) {
          EXPECT_EQ(N(a, b, c), N(b, a, c)) << name;
          for (int d = 0; d < n; ++d) {
            int l = 0, r = 0;
            for (int e = 0; e < n; ++e) {
              l += N(a, b, e) * N(e, c, d);
              r += N(b, c, e) * N(a, e, d);
            }
            EXPECT_EQ(l, r) << name;
          }
        }
        EXPECT_EQ(N(a, N.dual(a), 0), 1) << name;
      }
  }
}

TEST(FusionData, PerronFrobeniusDimsMatchPowerIteration) {
  for (const auto& name : bundled::names()) {
    const FusionRing& N = bundled::by_name(name).ring;
    const auto got = perron_frobenius_dims(N);
    const auto want = power_iteration_dims(N);
    for (int i = 0; i < N.rank(); ++i) EXPECT_NEAR(got[i], want[i], 1e-9) << name << " label " << i;
  }
  EXPECT_NEAR(perron_frobenius_dims(bundled::fibonacci().ring)[1], phi(), 1e-12);
  EXPECT_NEAR(perron_frobenius_dims(bundled::ising().ring)[1], std::sqrt(2.0), 1e-12);
}

TEST(FusionData, DataInvariantsHoldOnBundles) {
  for (const auto& name : bundled::names()) EXPECT_TRUE(check_data_invariants(bundled::by_name(name)).pass()) << name;
}

TEST(FusionData, MissingFBlockIsAShapeError) {
  CategoryData c;
  c.name = "broken";
  c.ring = FusionRing({{0, "1", 0, true}, {1, "tau", 1, false}});
  c.ring.set(0, 0, 0, 1);
  c.ring.set(0, 1, 1, 1);
  c.ring.set(1, 0, 1, 1);
  c.ring.set(1, 1, 0, 1);
  c.ring.set(1, 1, 1, 1);
  c.theta = {1.0, 1.0};
  try {
    c.finalize();
    FAIL() << "expected ShapeMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ShapeMismatch);
  }
}

TEST(FusionData, WrongShapeAndSingularBlocksAreRejected) {
  CategoryData c = bundled::fibonacci();
  FBlock blk = c.f(1, 1, 1, 1);
  blk.matrix = Matrix::Zero(2, 2);
  c.set_f(1, 1, 1, 1, blk);
  try {
    c.finalize();
    FAIL() << "expected InvalidData";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidData);
  }

  CategoryData d = bundled::fibonacci();
  d.theta.push_back(1.0);
  EXPECT_THROW(d.finalize(), Error);
}

TEST(FusionData, NonAssociativeFusionRingIsRejected) {
  CategoryData c = bundled::fibonacci();
  c.ring.set(1, 1, 1, 0);  // tau x tau = 1 only, but tau is not invertible in the rest of the data
  c.ring.set(1, 1, 0, 2);
  EXPECT_THROW(c.finalize(), Error);
}

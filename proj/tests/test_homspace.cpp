#include "support.hpp"

using namespace modcat;
using namespace modcat::testing;

namespace {

// Multiplicity of U_k in a word of simples, by repeated fusion-matrix products.
int word_multiplicity(const FusionRing& N, const std::vector<int>& word, int k) {
  std::vector<int> v(N.rank(), 0);
  v[0] = 1;
  for (int l : word) {
    std::vector<int> w(N.rank(), 0);
    for (int a = 0; a < N.rank(); ++a)
      for (int c = 0; c < N.rank(); ++c) w[c] += v[a] * N(a, l, c);
    v = w;
  }
  return v[k];
}

}  // namespace

TEST(Homspace, WordMultiplicitiesMatchFusionProducts) {
  for (const auto& name : bundled::names()) {
    const Category C(bundled_data(name));
    const int n = C.rank();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          const std::vector<int> w = {a, b, c};
          for (int k = 0; k < n; ++k) EXPECT_EQ(C.multiplicity(C.word(w), k), word_multiplicity(C.ring(), w, k)) << name;
        }
  }
}

TEST(Homspace, DimHomIsSumOfMultiplicityProducts) {
  const Category C(bundled_data("ising"));
  const Object x = C.word({1, 1}), y = C.word({1, 2, 1});
  int want = 0;
  for (int k = 0; k < C.rank(); ++k) want += word_multiplicity(C.ring(), {1, 1}, k) * word_multiplicity(C.ring(), {1, 2, 1}, k);
  EXPECT_EQ(C.dim_hom(x, y), want);
  EXPECT_EQ(C.dim_hom(C.unit(), C.word({1, 1})), 1);
}

TEST(Homspace, TensorInVecIsKroneckerProduct) {
  const Category C(bundled_data("vec"));
  std::mt19937_64 rng(7);
  const Object X = C.atomic({2}), Y = C.atomic({3}), Z = C.atomic({2}), W = C.atomic({2});
  const Morphism f = random_morphism(C, X, Y, rng), g = random_morphism(C, Z, W, rng);
  const Morphism t = C.tensor(f, g);
  const Matrix& a = f.blocks[0];
  const Matrix& b = g.blocks[0];
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  EXPECT_LE(max_abs(t.blocks[0] - k), 1e-12);
}

TEST(Homspace, BraidingOnSimplesIsTheRSymbol) {
  const auto data = bundled_data("fibonacci");
  const Category C(data);
  const Morphism c = C.braiding(C.simple(1), C.simple(1));
  EXPECT_NEAR(std::abs(c.blocks[0](0, 0) - data->r(1, 1, 0)(0, 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(c.blocks[1](0, 0) - data->r(1, 1, 1)(0, 0)), 0.0, 1e-12);
}

TEST(Homspace, TwistOnSimpleIsTheta) {
  for (const auto& name : bundled::names()) {
    const auto data = bundled_data(name);
    const Category C(data);
    for (int i = 0; i < C.rank(); ++i)
      EXPECT_NEAR(std::abs(C.twist(C.simple(i)).blocks[i](0, 0) - data->theta[i]), 0.0, 1e-12) << name;
  }
}

TEST(Homspace, YangBaxterOnThreeStrands) {
  for (const auto& [name, l] : std::vector<std::pair<std::string, int>>{{"fibonacci", 1}, {"ising", 1}, {"semion", 1}}) {
    const Category C(bundled_data(name));
    const Object u = C.simple(l);
    const Morphism id = C.identity(u), c = C.braiding(u, u);
    const Morphism lhs = C.compose_all({C.tensor(c, id), C.tensor(id, c), C.tensor(c, id)});
    const Morphism rhs = C.compose_all({C.tensor(id, c), C.tensor(c, id), C.tensor(id, c)});
    EXPECT_LE(residual(lhs, rhs), 1e-12) << name;
  }
}

TEST(Homspace, InverseBraidingAndTwist) {
  const Category C(bundled_data("ising"));
  const Object x = C.atomic({1, 1, 0}), y = C.word({1, 2});
  EXPECT_LE(residual(C.compose(C.braiding_inv(x, y), C.braiding(x, y)), C.identity(x * y)), 1e-12);
  EXPECT_LE(residual(C.compose(C.twist_inv(y), C.twist(y)), C.identity(y)), 1e-12);
}

TEST(Homspace, ZigzagsAndLoopValues) {
  for (const auto& name : bundled::names()) {
    const Category C(bundled_data(name));
    EXPECT_TRUE(verify_dualities(C).pass()) << name;
    const auto pf = perron_frobenius_dims(C.ring());
    for (int i = 0; i < C.rank(); ++i) EXPECT_NEAR(std::abs(C.loop_value(i) - pf[i]), 0.0, 1e-9) << name;
  }
}

TEST(Homspace, DimensionOfCompositeIsAdditiveAndMultiplicative) {
  const Category C(bundled_data("fibonacci"));
  const double p = phi();
  EXPECT_NEAR(C.dimension(C.atomic({2, 3})).real(), 2 + 3 * p, 1e-12);
  EXPECT_NEAR(C.dimension(C.word({1, 1, 1})).real(), p * p * p, 1e-12);
}

TEST(Homspace, CompositionTypeErrors) {
  const Category C(bundled_data("fibonacci"));
  const Morphism f = C.identity(C.simple(1));
  const Morphism g = C.identity(C.unit());
  try {
    C.compose(f, g);
    FAIL() << "expected ObjectMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ObjectMismatch);
  }
  try {
    C.make(C.simple(1), C.simple(1), {Matrix::Zero(1, 1)});
    FAIL() << "expected ShapeMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ShapeMismatch);
  }
  EXPECT_THROW(C.vertex(1, 1, 0, 1), Error);
}

TEST(Homspace, FlattenRoundTrip) {
  const Category C(bundled_data("ising"));
  const Object w = C.word({1, 1, 1});
  EXPECT_LE(residual(C.compose(C.unflatten(w), C.flatten(w)), C.identity(w)), 1e-12);
}

TEST(Homspace, UnitIsStrict) {
  const Category C(bundled_data("z3"));
  const Object u = C.simple(1);
  EXPECT_EQ(C.unit() * u, u);
  EXPECT_EQ(u * C.unit(), u);
  EXPECT_LE(residual(C.braiding(C.unit(), u), C.identity(u)), 0.0);
}

#include "support.hpp"

using namespace modcat;
using namespace modcat::testing;

namespace {

struct AlgebraVec : ::testing::Test {
  Category C{bundled_data("vec")};
};

// 2x2 matrix units E_ij at index 2i+j, with eps = trace. Structure constants written
// out by hand; Vec tensors are Kronecker products, so A (x) A has index 4a+b.
AlgebraPresentation matrix_units(const Category& C, bool with_delta) {
  const Object A = C.atomic({4});
  Matrix m = Matrix::Zero(4, 16), eta = Matrix::Zero(4, 1), eps = Matrix::Zero(1, 4);
  Matrix delta = Matrix::Zero(16, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l) {
        m(2 * i + l, 4 * (2 * i + j) + (2 * j + l)) = 1.0;   // E_ij E_jl = E_il
        delta(4 * (2 * i + j) + (2 * j + l), 2 * i + l) = 1.0;  // Delta(E_il) = sum_j E_ij (x) E_jl
      }
  for (int i = 0; i < 2; ++i) {
    eta(2 * i + i, 0) = 1.0;
    eps(0, 2 * i + i) = 1.0;
  }
  AlgebraPresentation a;
  a.name = "matrix_units";
  a.A = A;
  a.m = C.make(A * A, A, {m});
  a.eta = C.make(C.unit(), A, {eta});
  a.eps = C.make(A, C.unit(), {eps});
  if (with_delta) a.delta = C.make(A, A * A, {delta});
  return a;
}

void expect_fails(const Report& r, const std::string& check) {
  const Check* c = r.find(check);
  ASSERT_NE(c, nullptr) << "no check " << check << " in " << r.subject;
  EXPECT_FALSE(c->pass) << check << " unexpectedly passed on " << r.subject;
}

CategoryData without_dagger(const std::string& name) {
  CategoryData d = bundled::by_name(name);
  d.dagger = false;
  return d;
}

}  // namespace

TEST_F(AlgebraVec, SolvedCoproductMatchesMatrixUnits) {
  const AlgebraPresentation want = matrix_units(C, true);
  const AlgebraPresentation got = solve_coalgebra(C, matrix_units(C, false));
  EXPECT_LE(residual(*got.delta, *want.delta), 1e-12);
  EXPECT_TRUE(check_frobenius(C, got).pass());
}

TEST_F(AlgebraVec, TraceCounitIsTraceOfLeftMultiplication) {
  // L_{E_ij} has trace 2 delta_ij on M_2.
  const Morphism t = trace_counit(C, matrix_units(C, false));
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(std::abs(t.blocks[0](0, k) - (k == 0 || k == 3 ? 2.0 : 0.0)), 0.0, 1e-12);
}

TEST_F(AlgebraVec, MatrixAlgebraIsSpecialSymmetricSimpleButNotCommutative) {
  const AlgebraPresentation a = bundled::matrix2(C);
  const Report r = check_all_properties(C, a);
  for (const auto* name : {"unit_left", "associativity", "frobenius_left", "symmetric", "special_fit", "simple",
                           "m_star_delta"})
    EXPECT_TRUE(r.passed(name)) << name;
  expect_fails(r, "commutative");
  expect_fails(r, "haploid");
  EXPECT_NEAR(std::abs(r.scalars.at("beta_A") - 2.0), 0.0, 1e-12);
}

TEST_F(AlgebraVec, TwistedCounitBreaksSymmetryOnly) {
  const Report r = check_all_properties(C, bundled::matrix2_twisted(C));
  EXPECT_TRUE(r.passed("frobenius_left"));
  EXPECT_TRUE(r.passed("coassociativity"));
  expect_fails(r, "symmetric");
}

TEST_F(AlgebraVec, DualNumbersAreNotSpecialNorStar) {
  const Report r = check_all_properties(C, bundled::dual_numbers(C));
  EXPECT_TRUE(r.passed("frobenius_right"));
  EXPECT_TRUE(r.passed("commutative"));
  EXPECT_TRUE(r.passed("symmetric"));
  EXPECT_FALSE(r.passed("special_fit") && r.passed("beta_A_nonzero") && r.passed("beta_1_nonzero"));
  EXPECT_FALSE(r.passed("m_star_delta") && r.passed("eta_star_eps"));
}

TEST_F(AlgebraVec, DirectSumIsNeitherHaploidNorSimple) {
  const AlgebraPresentation a = bundled::direct_sum_unit(C);
  const Report r = check_all_properties(C, a);
  EXPECT_TRUE(r.passed("commutative"));
  expect_fails(r, "haploid");
  expect_fails(r, "simple");
  EXPECT_DOUBLE_EQ(r.scalars.at("bimodule_endomorphisms").real(), 2.0);
  EXPECT_FALSE(is_haploid(C, a));
}

TEST_F(AlgebraVec, UnitAlgebraHasEveryProperty) {
  EXPECT_TRUE(check_all_properties(C, unit_algebra(C)).pass());
}

TEST(Algebra, EndomorphismAlgebrasOfSimples) {
  const double p = phi();
  for (const auto& [name, label, dim] :
       std::vector<std::tuple<std::string, int, double>>{{"fibonacci", 1, p}, {"ising", 1, std::sqrt(2.0)}}) {
    const Category C(bundled_data(name));
    const AlgebraPresentation a = bundled::end_simple(C, label);
    const Report r = check_all_properties(C, a);
    for (const auto* c : {"associativity", "frobenius_left", "frobenius_right", "symmetric", "special_fit", "simple",
                          "haploid", "m_star_delta", "eta_star_eps", "positivity"})
      EXPECT_TRUE(r.passed(c)) << name << " " << c;
    expect_fails(r, "commutative");
    // m o Delta = d_X id and eps o eta = d_X.
    EXPECT_NEAR(std::abs(r.scalars.at("beta_A") - dim), 0.0, 1e-12) << name;
    EXPECT_NEAR(std::abs(r.scalars.at("beta_1") - dim), 0.0, 1e-12) << name;
    EXPECT_NEAR(std::abs(r.scalars.at("dim") - dim * dim), 0.0, 1e-12) << name;
  }
}

TEST(Algebra, StarOnNonDaggerCategoryThrows) {
  const Category C(without_dagger("fibonacci"));
  const AlgebraPresentation a = bundled::end_simple(C, 1);
  try {
    check_star_frobenius(C, a);
    FAIL() << "expected NoDaggerStructure";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoDaggerStructure);
  }
  EXPECT_EQ(check_all_properties(C, a).find("m_star_delta"), nullptr);
  expect_fails(check_all_properties(C, a, {"star"}), "star");
}

TEST(Algebra, FStarOfIdentityIsIdentity) {
  for (const auto& [name, label] : std::vector<std::pair<std::string, int>>{{"vec", 0}, {"fibonacci", 1}, {"ising", 1}}) {
    const Category C(bundled_data(name));
    const AlgebraPresentation a =
        label == 0 ? bundled::matrix2(C) : with_coalgebra(C, bundled::end_simple(C, label));
    const Morphism id = C.identity(a.A);
    EXPECT_LE(residual(f_star(C, id, a, a), id), 1e-12) << name;
  }
}

TEST(Algebra, FStarIsLinear) {
  const Category C(bundled_data("fibonacci"));
  const AlgebraPresentation a = with_coalgebra(C, bundled::end_simple(C, 1));
  std::mt19937_64 rng(3);
  const Morphism f = random_morphism(C, a.A, a.A, rng), g = random_morphism(C, a.A, a.A, rng);
  const Complex x(0.3, -1.1), y(2.0, 0.5);
  const Morphism lhs = f_star(C, x * f + y * g, a, a);
  const Morphism rhs = x * f_star(C, f, a, a) + y * f_star(C, g, a, a);
  EXPECT_LE(residual(lhs, rhs), 1e-10);
}

TEST(Algebra, FStarTypeError) {
  const Category C(bundled_data("vec"));
  const AlgebraPresentation a = bundled::matrix2(C), b = bundled::direct_sum_unit(C);
  EXPECT_THROW(f_star(C, C.identity(a.A), a, b), Error);
}

TEST(Algebra, MissingCounitWithCoproductIsRejected) {
  const Category C(bundled_data("vec"));
  AlgebraPresentation a = matrix_units(C, true);
  a.eps.reset();
  try {
    solve_coalgebra(C, a);
    FAIL() << "expected MissingCoalgebra";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingCoalgebra);
  }
}

TEST(Algebra, DegenerateCounitHasNoCoproduct) {
  const Category C(bundled_data("vec"));
  AlgebraPresentation a = matrix_units(C, false);
  *a.eps = C.zero(a.A, C.unit());
  try {
    solve_coalgebra(C, a);
    FAIL() << "expected MissingCoalgebra";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingCoalgebra);
  }
}

TEST(Algebra, WrongShapeIsRejected) {
  const Category C(bundled_data("vec"));
  AlgebraPresentation a = matrix_units(C, false);
  a.eta = C.zero(C.unit(), C.atomic({3}));
  EXPECT_THROW(check_unit_assoc(C, a), Error);
}

TEST(Algebra, StarNormalizeFixesCounitScale) {
  const Category C(bundled_data("vec"));
  const AlgebraPresentation a = rescale_coalgebra(with_coalgebra(C, bundled::matrix2(C)), 3.0);
  EXPECT_FALSE(check_star_frobenius(C, a).passed("m_star_delta"));
  EXPECT_TRUE(check_star_frobenius(C, star_normalize(C, a)).pass());
}

#include "support.hpp"

using namespace modcat;
using namespace modcat::testing;

namespace {

double worst_of(const Report& r, const std::string& prefix) {
  double w = 0.0;
  for (const auto& c : r.checks)
    if (c.name.rfind(prefix, 0) == 0) w = std::max(w, c.max_residual);
  return w;
}

bool group_passes(const Report& r, const std::string& prefix) {
  bool any = false;
  for (const auto& c : r.checks)
    if (c.name.rfind(prefix, 0) == 0) {
      any = true;
      if (!c.pass) return false;
    }
  return any;
}

CardyTriple negative(const std::string& name) {
  return io::load_cardy_triple(io::load_manifest(data_dir() / "negatives" / "cardy" / name / "manifest.json"));
}

}  // namespace

TEST(Cardy, CanonicalTripleOfUnitPassesInEveryModularBundle) {
  for (const auto& name : modular_names()) {
    const Doubled D(bundled_data(name));
    CardyTriple t = canonical_cardy(D, unit_algebra(*D.C));
    const Report r = verify_cardy_algebra(t);
    EXPECT_TRUE(r.pass()) << name << "\n" << io::render_report(r);
    for (const auto* g : {"centre.", "cardy.", "iota.", "modinv_direct.", "B_frobenius."})
      EXPECT_LE(worst_of(r, g), 1e-8) << name << " " << g;
    EXPECT_TRUE(r.passed("modinv_forms_agree")) << name;
  }
}

TEST(Cardy, CanonicalTriplesOfNontrivialAlgebrasPass) {
  const std::vector<std::pair<std::string, std::function<AlgebraPresentation(const Category&)>>> cases = {
      {"vec", [](const Category& C) { return bundled::matrix2(C); }},
      {"fibonacci", [](const Category& C) { return bundled::end_simple(C, 1); }},
      {"ising", [](const Category& C) { return bundled::end_simple(C, 1); }},
  };
  for (const auto& [name, make] : cases) {
    const Doubled D(bundled_data(name));
    CardyTriple t = canonical_cardy(D, make(*D.C));
    const Report r = verify_cardy_algebra(t);
    EXPECT_TRUE(r.pass()) << name << "\n" << io::render_report(r);
    EXPECT_LE(worst_of(r, "cardy."), 1e-8) << name;
  }
}

TEST(Cardy, HaploidCentreForcesSimpleSpecialBoundary) {
  for (const auto& name : {"fibonacci", "ising"}) {
    const Doubled D(bundled_data(name));
    CardyTriple t = canonical_cardy(D, bundled::end_simple(*D.C, 1));
    ASSERT_TRUE(is_haploid(*D.P, t.B));
    const Report r = verify_cardy_algebra(t);
    ASSERT_NE(r.find("A_simple.simple"), nullptr) << name;
    EXPECT_TRUE(r.passed("A_simple.simple")) << name;
    EXPECT_DOUBLE_EQ(is_simple_bimodule(*D.C, t.A).scalars.at("bimodule_endomorphisms").real(), 1.0);
    EXPECT_TRUE(group_passes(r, "A_special.")) << name;
  }
}

TEST(Cardy, CentreDimensionMeetsTheBound) {
  for (const auto& name : modular_names()) {
    const Doubled D(bundled_data(name));
    const CardyTriple t = canonical_cardy(D, unit_algebra(*D.C));
    const Report r = check_modular_invariance_dim(*D.P, t.B);
    EXPECT_TRUE(r.passed("dimension_criterion")) << name;
    ASSERT_NE(r.find("dimension_bound"), nullptr) << name;
    EXPECT_TRUE(r.passed("dimension_bound")) << name;
  }
}

TEST(Cardy, ScaledIotaFailsCardyConditionOnly) {
  CardyTriple t = negative("vec_matrix2_scaled");
  const Report r = verify_cardy_algebra(t);
  EXPECT_FALSE(r.pass());
  EXPECT_FALSE(group_passes(r, "cardy."));
  EXPECT_TRUE(group_passes(r, "centre."));
  EXPECT_GE(worst_of(r, "cardy."), 1e-3);
}

TEST(Cardy, NoncentralBulkFailsCentreCondition) {
  CardyTriple t = negative("vec_matrix2_noncentral");
  const Report r = verify_cardy_algebra(t);
  EXPECT_FALSE(r.pass());
  EXPECT_FALSE(group_passes(r, "centre."));
}

TEST(Cardy, TrivialBulkFailsModularInvariance) {
  CardyTriple t = negative("fibonacci_trivial_bulk");
  const Report r = verify_cardy_algebra(t);
  EXPECT_FALSE(r.pass());
  EXPECT_FALSE(group_passes(r, "modinv_direct."));
  EXPECT_FALSE(r.passed("modinv_dim.dimension_criterion"));
  EXPECT_TRUE(r.passed("modinv_forms_agree"));
  EXPECT_TRUE(group_passes(r, "centre."));
}

TEST(Cardy, ModularInvarianceOfUnitDependsOnTheCategory) {
  const Category vec(bundled_data("vec"));
  EXPECT_TRUE(check_modular_invariance_direct(vec, unit_algebra(vec)).pass());
  const Category fib(bundled_data("fibonacci"));
  const Report direct = check_modular_invariance_direct(fib, unit_algebra(fib));
  EXPECT_FALSE(direct.passed("modular_invariance"));
  EXPECT_NE(direct.find("modular_invariance")->witness.find("W = "), std::string::npos);
  EXPECT_FALSE(check_modular_invariance_dim(fib, unit_algebra(fib)).passed("dimension_criterion"));
}

TEST(Cardy, NonModularCategoryIsRejected) {
  const Doubled D(bundled_data("z2_symmetric"));
  try {
    check_modular_invariance_direct(*D.P, unit_algebra(*D.P));
    FAIL() << "expected NotModular";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotModular);
  }
  CardyTriple t = canonical_cardy(D, unit_algebra(*D.C));
  const Report r = verify_cardy_algebra(t);
  EXPECT_FALSE(r.passed("modinv_direct"));
  EXPECT_TRUE(group_passes(r, "centre."));
  EXPECT_TRUE(group_passes(r, "cardy."));
}

TEST(Cardy, DimensionFormNamesTheMissingPrecondition) {
  const Category vec(bundled_data("vec"));
  const Category fib(bundled_data("fibonacci"));
  const std::vector<std::pair<AlgebraPresentation, std::string>> cases = {
      {bundled::direct_sum_unit(vec), "haploid"},
      {bundled::end_simple(fib, 1), "commutative"},
  };
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Category& C = i == 0 ? vec : fib;
    try {
      check_modular_invariance_dim(C, cases[i].first);
      FAIL() << "expected PreconditionFailed";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::PreconditionFailed);
      EXPECT_NE(std::string(e.what()).find(cases[i].second), std::string::npos) << e.what();
    }
  }
}

TEST(Cardy, DirectAndDimensionFormsAgreeOnCandidates) {
  for (const auto& name : modular_names()) {
    const Doubled D(bundled_data(name));
    const Category& P = *D.P;
    const std::vector<AlgebraPresentation> candidates = {canonical_cardy(D, unit_algebra(*D.C)).B, unit_algebra(P)};
    for (const auto& B : candidates) {
      const bool direct = check_modular_invariance_direct(P, B).pass();
      const bool dim = check_modular_invariance_dim(P, B).passed("dimension_criterion");
      EXPECT_EQ(direct, dim) << name << " " << B.name;
    }
  }
}

TEST(Cardy, NonDaggerCopyStillVerifies) {
  CategoryData d = bundled::fibonacci();
  d.dagger = false;
  const Doubled D(std::make_shared<const CategoryData>(std::move(d)));
  CardyTriple t = canonical_cardy(D, unit_algebra(*D.C));
  EXPECT_TRUE(verify_cardy_algebra(t).pass());
}

TEST(CardyIsomorphism, IdentityMapsIdentifyATripleWithItself) {
  const Doubled D(bundled_data("fibonacci"));
  CardyTriple s = canonical_cardy(D, bundled::end_simple(*D.C, 1));
  CardyTriple t = canonical_cardy(D, bundled::end_simple(*D.C, 1));
  const Report r = check_cardy_isomorphism(s, t, D.C->identity(s.A.A), D.P->identity(s.B.A));
  EXPECT_TRUE(r.pass()) << io::render_report(r);
}

TEST(CardyIsomorphism, NonAlgebraMapsAreRejected) {
  const Doubled D(bundled_data("fibonacci"));
  CardyTriple s = canonical_cardy(D, bundled::end_simple(*D.C, 1));
  CardyTriple t = canonical_cardy(D, bundled::end_simple(*D.C, 1));
  const Report r = check_cardy_isomorphism(s, t, D.C->identity(s.A.A), 2.0 * D.P->identity(s.B.A));
  EXPECT_FALSE(r.pass());
  EXPECT_FALSE(r.passed("g.multiplicative"));
  EXPECT_TRUE(r.passed("f.multiplicative"));
  const Report z = check_cardy_isomorphism(s, t, D.C->zero(s.A.A, s.A.A), D.P->identity(s.B.A));
  EXPECT_FALSE(z.passed("f.invertible"));
}

TEST(CardyIsomorphism, DifferentCategoriesAreAFactorMismatch) {
  const Doubled D1(bundled_data("fibonacci")), D2(bundled_data("semion"));
  CardyTriple s = canonical_cardy(D1, unit_algebra(*D1.C));
  CardyTriple t = canonical_cardy(D2, unit_algebra(*D2.C));
  try {
    check_cardy_isomorphism(s, t, D1.C->identity(s.A.A), D1.P->identity(s.B.A));
    FAIL() << "expected FactorMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FactorMismatch);
  }
}

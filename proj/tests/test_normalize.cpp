#include "catcom/normalize.hpp"
#include "catcom/stdlib/defaults.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace catcom;
using namespace fixtures;

namespace {

template <class C>
struct Model {
  explicit Model(C c) : cat(std::move(c)), rep(cat, stdlib::default_hom(cat)), units(rep) {}
  C cat;
  Representation<C> rep;
  UnitFamily<C> units;
};

void expect_passed(const Report& r, double max_error = 0.0) {
  for (const auto& c : r.checks) {
    EXPECT_TRUE(c.passed) << c.name << ": " << c.witness;
    EXPECT_LE(c.max_error, max_error) << c.name;
  }
}

/// Values of a functional on the subset states of A, indexed by mask.
std::vector<Rational> on_subsets(const Model<RelCategory>& m, std::span<const Rational> f) {
  const auto a = m.cat.atom(0);
  const auto n = m.cat.size(a);
  std::vector<Rational> out;
  for (std::uint64_t x = 0; x < (1u << n); ++x) out.push_back(dot<Rational>(f, m.rep.hat_coords(m.cat.subset_state(a, x))));
  return out;
}

}  // namespace

TEST(Units, RelationFullSetUnitIsValid) {
  Model<RelCategory> m(RelCategory::with_sizes({1, 2}));
  const auto r = validate_unit(m.units, m.cat.objects());
  expect_passed(r);
  const auto* dom = r.find("unit_domination");
  ASSERT_NE(dom, nullptr);
  EXPECT_NE(std::find(dom->notes.begin(), dom->notes.end(), "max t* on A2 = 1"), dom->notes.end());
  EXPECT_EQ(m.units.at(m.cat.atom(0)).provenance, "full-set");
}

TEST(Units, FullSetUnitCountsNonemptySubsets) {
  Model<RelCategory> m(RelCategory::with_sizes({2}));
  const auto& u = m.units.at(m.cat.atom(0));
  EXPECT_EQ(on_subsets(m, u.row), (std::vector<Rational>{0, 1, 1, 1}));
}

TEST(Units, MatrixTraceUnitIsValid) {
  Model<ComplexMatrixCategory> m(complex_dims({2}));
  expect_passed(validate_unit(m.units, m.cat.objects()), 1e-9);
  Model<RealMatrixCategory> r(real_dims({2}));
  expect_passed(validate_unit(r.units, r.cat.objects()), 1e-9);
}

TEST(Units, TraceUnitGivesSquaredNorm) {
  Model<ComplexMatrixCategory> m(complex_dims({3}));
  const auto a = m.cat.atom(0);
  Rng rng(8);
  for (int k = 0; k < 20; ++k) {
    const auto psi = *m.cat.sample_hom(m.cat.unit(), a, rng);
    const auto x = m.rep.hat_coords(psi);
    EXPECT_NEAR(m.units.at(a)(x), psi.m.squaredNorm(), 1e-9 * psi.m.squaredNorm());
  }
}

TEST(Units, DominationBoundOnRelations) {
  Model<RelCategory> m(RelCategory::with_sizes({2}));
  const auto a = m.cat.atom(0);
  const auto& s = m.rep.space(a);
  const auto& u = m.units.at(a);
  const auto f = m.rep.effect_functional(m.cat.subset_effect(a, 0b01));
  EXPECT_EQ(*domination_bound(s, u, std::span<const Rational>(f), {}), 1);
  auto f3 = f;
  for (auto& x : f3) x *= 3;
  EXPECT_EQ(*domination_bound(s, u, std::span<const Rational>(f3), {}), 3);
}

TEST(Units, ScaledUnitIsNotMultiplicative) {
  Model<RelCategory> m(RelCategory::with_sizes({2}));
  const auto a = m.cat.atom(0);
  m.units.set(scaled_unit(builtin_unit(m.rep, a), Rational(2)));
  const auto r = validate_unit(m.units, m.cat.objects());
  const auto* mult = r.find("unit_multiplicative");
  EXPECT_FALSE(mult->passed);
  EXPECT_EQ(mult->witness.rfind("NotMultiplicative", 0), 0u);
  EXPECT_TRUE(r.find("unit_strictly_positive")->passed);
}

TEST(Units, ZeroUnitIsNotStrictlyPositive) {
  Model<RelCategory> m(RelCategory::with_sizes({2}));
  m.units.set(scaled_unit(builtin_unit(m.rep, m.cat.atom(0)), Rational(0)));
  const auto r = validate_unit(m.units, {m.cat.unit(), m.cat.atom(0)});
  EXPECT_FALSE(r.find("unit_strictly_positive")->passed);
}

TEST(Units, UserValuesMustBeLinearAndComplete) {
  Model<RelCategory> m(RelCategory::with_sizes({2}));
  const auto a = m.cat.atom(0);
  const auto n = m.rep.space(a).states.size();
  try {
    (void)unit_from_state_values(m.rep, a, std::vector<Rational>(n - 1, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Config);
  }
  // constant 1 on every state, the empty one included, is not linear
  EXPECT_THROW((void)unit_from_state_values(m.rep, a, std::vector<Rational>(n, 1)), Error);
  std::vector<Rational> ok;
  for (const auto& st : m.rep.space(a).states) ok.push_back(st.empty() ? 0 : 1);
  const auto u = unit_from_state_values(m.rep, a, ok);
  EXPECT_EQ(u.row, m.units.at(a).row);
}

TEST(Units, TablesWithoutUnitDeclarationHaveNoNaturalUnit) {
  const auto cat = z2();
  const Representation<TableCategory> rep(cat, stdlib::default_hom(cat));
  try {
    (void)builtin_unit(rep, cat.unit());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoCanonicalUnit);
  }
}

TEST(Com, RelationModelIsSimplexLike) {
  Model<RelCategory> m(RelCategory::with_sizes({2}));
  const auto com = assemble_com(m.rep, m.units.at(m.cat.atom(0)));
  EXPECT_EQ(com.dim(), 3u);
  EXPECT_EQ(com.omega.rows(), 3u);
  EXPECT_TRUE(com.unit_in_dual_span);
  EXPECT_TRUE(com.order_unit_certified);
  EXPECT_FALSE(com.degenerate);
}

TEST(Com, ZeroSpacesAreFlaggedDegenerate) {
  Model<SemilatticeCategory> m(diamond());
  const auto x = ObjectId{m.cat.index_of("x")};
  const auto com = assemble_com(m.rep, m.units.at(x));
  EXPECT_TRUE(com.degenerate);
  EXPECT_TRUE(validate_unit(m.units, m.cat.objects()).passed());
}

TEST(EffectAlgebra, SumOfOverlappingEffectsIsUndefined) {
  Model<RelCategory> m(RelCategory::with_sizes({2}));
  const auto a = m.cat.atom(0);
  const auto com = assemble_com(m.rep, m.units.at(a));
  const auto f = m.rep.effect_functional(m.cat.subset_effect(a, 0b01));
  const auto g = m.rep.effect_functional(m.cat.subset_effect(a, 0b10));
  EXPECT_EQ(on_subsets(m, f), (std::vector<Rational>{0, 1, 0, 1}));
  EXPECT_EQ(on_subsets(m, g), (std::vector<Rational>{0, 0, 1, 1}));
  std::vector<Rational> sum(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) sum[i] = f[i] + g[i];
  EXPECT_EQ(on_subsets(m, sum), (std::vector<Rational>{0, 1, 1, 2}));
  try {
    (void)oplus(com, std::span<const Rational>(f), std::span<const Rational>(g));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotOrthogonal);
  }
  const auto verdict = effect_interval_membership(com, std::span<const Rational>(sum));
  EXPECT_FALSE(verdict.member);
  EXPECT_EQ(verdict.violation, "f > u");
}

TEST(EffectAlgebra, OrthosupplementCompletesToUnit) {
  Model<RelCategory> m(RelCategory::with_sizes({2}));
  const auto a = m.cat.atom(0);
  const auto com = assemble_com(m.rep, m.units.at(a));
  const auto f = m.rep.effect_functional(m.cat.subset_effect(a, 0b01));
  const auto perp = orthosupplement(com, std::span<const Rational>(f));
  EXPECT_EQ(on_subsets(m, perp), (std::vector<Rational>{0, 0, 1, 0}));
  EXPECT_EQ(oplus(com, std::span<const Rational>(f), std::span<const Rational>(perp)), com.unit.row);
  std::vector<Rational> neg(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) neg[i] = -f[i];
  EXPECT_EQ(effect_interval_membership(com, std::span<const Rational>(neg)).violation, "f < 0");
}

TEST(EffectAlgebra, LawsHoldOnRelationsAndMatrices) {
  Model<RelCategory> r(RelCategory::with_sizes({3}));
  expect_passed(check_effect_algebra(r.rep, assemble_com(r.rep, r.units.at(r.cat.atom(0)))));
  Model<ComplexMatrixCategory> c(complex_dims({2}));
  expect_passed(check_effect_algebra(c.rep, assemble_com(c.rep, c.units.at(c.cat.atom(0)))), 1e-9);
}

TEST(PhysicalMaps, EveryRelationIsSubnormalizing) {
  Model<RelCategory> m(RelCategory::with_sizes({2}));
  const PhysicalSubcategory<RelCategory> cu(m.units);
  const auto a = m.cat.atom(0);
  const auto homs = m.cat.hom(a, a, 4096);
  ASSERT_TRUE(homs);
  EXPECT_EQ(homs->size(), 16u);
  for (const auto& phi : *homs) EXPECT_TRUE(cu.contains(phi)) << m.cat.key(phi);
}

TEST(PhysicalMaps, DoublingMapIsExcluded) {
  Model<ComplexMatrixCategory> m(complex_dims({2}));
  const PhysicalSubcategory<ComplexMatrixCategory> cu(m.units);
  const auto a = m.cat.atom(0);
  EXPECT_TRUE(cu.contains(m.cat.identity(a)));
  const auto v = cu.membership(m.cat.scaled(m.cat.identity(a), std::sqrt(2.0)));
  EXPECT_FALSE(v.member);
  EXPECT_NEAR(v.excess, 1.0, 1e-9);
}

TEST(PhysicalMaps, ClosedUnderCompositionAndTensor) {
  Model<RelCategory> r(RelCategory::with_sizes({1, 2}));
  const PhysicalSubcategory<RelCategory> cu_r(r.units);
  const auto rr = check_cu_closure(cu_r, r.cat.objects());
  expect_passed(rr);
  EXPECT_TRUE(rr.find("cu_closed_under_composition")->exhaustive);

  Model<ComplexMatrixCategory> c(complex_dims({2}));
  const PhysicalSubcategory<ComplexMatrixCategory> cu_c(c.units);
  const auto rc = check_cu_closure(cu_c, c.cat.objects(), {}, 500);
  expect_passed(rc, 1e-9);
  EXPECT_GE(rc.find("cu_closed_under_composition")->cases, 500u);
}

TEST(PhysicalMaps, DualActionPreservesEffectInterval) {
  Model<RelCategory> r(RelCategory::with_sizes({2}));
  expect_passed(check_completion_finite(PhysicalSubcategory<RelCategory>(r.units), r.cat.objects()));
  Model<ComplexMatrixCategory> c(complex_dims({2}));
  expect_passed(check_completion_finite(PhysicalSubcategory<ComplexMatrixCategory>(c.units), c.cat.objects()), 1e-9);
}

TEST(NoSignaling, MarginalOfProductStateIsLocalState) {
  Model<RelCategory> m(RelCategory::with_sizes({2, 2}));
  const auto A = m.cat.atom(0), B = m.cat.atom(1);
  const auto comp = build_composite(m.rep, A, B);
  for (std::uint64_t x = 1; x < 4; ++x)
    for (std::uint64_t y = 1; y < 4; ++y) {
      const auto alpha = m.rep.hat_coords(m.cat.subset_state(A, x));
      const auto beta = m.rep.hat_coords(m.cat.subset_state(B, y));
      const auto joint = comp.product(alpha, beta);
      const auto mg = marginal_states(m.rep, comp, m.units, joint);
      EXPECT_EQ(mg.first, alpha);
      EXPECT_EQ(mg.second, beta);
    }
}

TEST(NoSignaling, HoldsOnRelationsExactly) {
  Model<RelCategory> m(RelCategory::with_sizes({2, 2}));
  const auto comp = build_composite(m.rep, m.cat.atom(0), m.cat.atom(1));
  const auto r = check_no_signaling(m.rep, comp, m.units, {}, 100);
  expect_passed(r);
  EXPECT_GE(r.find("marginal_cone_certificates")->cases, 100u);
}

TEST(NoSignaling, HoldsOnComplexMatrices) {
  Model<ComplexMatrixCategory> m(complex_dims({2, 2}));
  const auto comp = build_composite(m.rep, m.cat.atom(0), m.cat.atom(1));
  expect_passed(check_no_signaling(m.rep, comp, m.units, {}, 100), 1e-9);
}

TEST(CompositeCom, UnitOfCompositeIsProductOfUnits) {
  Model<RelCategory> r(RelCategory::with_sizes({2, 2}));
  expect_passed(check_composite_com(r.rep, build_composite(r.rep, r.cat.atom(0), r.cat.atom(1)), r.units));
  Model<ComplexMatrixCategory> c(complex_dims({2, 3}));
  expect_passed(check_composite_com(c.rep, build_composite(c.rep, c.cat.atom(0), c.cat.atom(1)), c.units), 1e-9);
}

#include "catcom/stdlib/defaults.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <complex>

using namespace catcom;
using namespace fixtures;

using CMat = ComplexMatrixCategory::Mat;

TEST(RelBackend, SubsetStatesAndEffects) {
  const auto cat = RelCategory::with_sizes({3});
  const auto a = cat.atom(0);
  EXPECT_EQ(cat.states(a).size(), 8u);
  EXPECT_EQ(cat.effects(a).size(), 8u);
  const auto s = cat.subset_state(a, 0b101);
  EXPECT_TRUE(s.test(0, 0));
  EXPECT_FALSE(s.test(0, 1));
  EXPECT_TRUE(s.test(0, 2));
  // an effect meets a state iff the subsets intersect
  for (std::uint64_t x = 0; x < 8; ++x)
    for (std::uint64_t y = 0; y < 8; ++y) {
      const auto sc = cat.compose(cat.subset_effect(a, y), cat.subset_state(a, x));
      EXPECT_EQ(!sc.empty(), (x & y) != 0);
    }
}

TEST(RelBackend, TensorOfRelationsIsProduct) {
  const auto cat = RelCategory::with_sizes({2, 2});
  const auto a = cat.atom(0), b = cat.atom(1);
  const auto f = cat.relation(a, a, {{0, 1}});
  const auto g = cat.relation(b, b, {{1, 0}, {1, 1}});
  const auto fg = cat.tensor(f, g);
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = 0; y < 4; ++y) EXPECT_EQ(fg.test(x, y), f.test(x / 2, y / 2) && g.test(x % 2, y % 2));
}

TEST(RelBackend, UnitIsFullSubset) {
  const auto cat = RelCategory::with_sizes({3});
  const auto u = cat.unit_effects(cat.atom(0));
  ASSERT_TRUE(u.has_value());
  EXPECT_EQ(u->first, "full-set");
  ASSERT_EQ(u->second.size(), 1u);
  EXPECT_EQ(u->second[0], cat.subset_effect(cat.atom(0), 0b111));
}

TEST(MatrixBackend, CompositionAndTensorAreMatrixOperations) {
  const auto cat = complex_dims({2, 3});
  const auto a = cat.atom(0), b = cat.atom(1);
  Rng rng(3);
  const auto f = *cat.sample_hom(a, b, rng);
  const auto g = *cat.sample_hom(b, a, rng);
  const CMat gf = g.m * f.m;
  EXPECT_TRUE(cat.compose(g, f).m.isApprox(gf));
  const auto t = cat.tensor(f, g);
  ASSERT_EQ(t.m.rows(), 6);
  ASSERT_EQ(t.m.cols(), 6);
  for (Eigen::Index i = 0; i < 6; ++i)
    for (Eigen::Index j = 0; j < 6; ++j)
      EXPECT_NEAR(std::abs(t.m(i, j) - f.m(i / 2, j / 3) * g.m(i % 2, j % 3)), 0.0, 1e-12);
  EXPECT_THROW((void)cat.compose(f, f), Error);
}

TEST(MatrixBackend, SwapExchangesTensorFactors) {
  const auto cat = complex_dims({2, 3});
  const auto a = cat.atom(0), b = cat.atom(1);
  Rng rng(5);
  const auto v = *cat.sample_hom(cat.unit(), a, rng);
  const auto w = *cat.sample_hom(cat.unit(), b, rng);
  const auto swapped = cat.compose(cat.swap(a, b), cat.tensor(v, w));
  EXPECT_TRUE(cat.equal(swapped, cat.tensor(w, v)));
}

TEST(MatrixBackend, ProbesAreDeterministicAndNormalized) {
  const auto cat = complex_dims({3});
  const auto a = cat.atom(0);
  const auto s1 = cat.states(a), s2 = cat.states(a);
  ASSERT_EQ(s1.size(), 12u);
  for (std::size_t i = 0; i < s1.size(); ++i) {
    EXPECT_EQ(cat.key(s1[i]), cat.key(s2[i]));
    EXPECT_NEAR(s1[i].m.norm(), 1.0, 1e-12);
  }
  EXPECT_EQ(cat.states(a, 1).size(), 24u);
  EXPECT_EQ(cat.key(cat.states(a, 1)[7]), cat.key(s1[7]));
}

TEST(MatrixBackend, ContractionsHaveNormAtMostOne) {
  const auto cat = complex_dims({2, 3});
  Rng rng(9);
  for (int k = 0; k < 50; ++k) {
    const auto f = cat.sample_contraction(cat.atom(0), cat.atom(1), rng);
    Eigen::JacobiSVD<CMat> svd(f.m);
    EXPECT_LE(svd.singularValues()(0), 1.0 + 1e-12);
  }
}

TEST(MatrixBackend, CupAndCapAreMaximallyEntangled) {
  const auto cat = real_dims({3});
  const auto d = cat.duality(cat.atom(0));
  ASSERT_TRUE(d.has_value());
  EXPECT_DOUBLE_EQ(cat.compose(d->cap, d->cup).m(0, 0), 3.0);
}

TEST(MatrixBackend, TraceUnitUsesBasisEffects) {
  const auto cat = complex_dims({3});
  const auto u = cat.unit_effects(cat.atom(0));
  ASSERT_TRUE(u.has_value());
  EXPECT_EQ(u->first, "trace");
  EXPECT_EQ(u->second.size(), 3u);
}

TEST(SemilatticeBackend, OnlyTopHasStates) {
  const auto cat = chain3();
  for (const auto& o : cat.objects()) {
    EXPECT_EQ(cat.states(o).size(), o == cat.unit() ? 1u : 0u) << cat.label(o);
    EXPECT_EQ(cat.effects(o).size(), 1u);
  }
  EXPECT_EQ(cat.unit_effects(cat.unit())->first, "discard");
}

TEST(TableBackend, LookupsFollowTheTables) {
  const auto cat = z2();
  const auto e = cat.morphism_named("e"), s = cat.morphism_named("s");
  EXPECT_EQ(cat.compose(s, s), e);
  EXPECT_EQ(cat.compose(e, s), s);
  EXPECT_EQ(cat.tensor(s, s), e);
  EXPECT_EQ(cat.states(cat.unit()).size(), 2u);
  EXPECT_THROW((void)cat.morphism_named("t"), Error);
}

TEST(TableBackend, MissingTensorEntryThrows) {
  auto d = monoid_on_unit("e");
  d.tensor_morphisms.pop_back();
  const TableCategory cat(d);
  EXPECT_THROW((void)cat.tensor(cat.morphism_named("s"), cat.morphism_named("s")), Error);
}

TEST(Defaults, EachBackendHasANamedDefault) {
  EXPECT_EQ(stdlib::default_hom(RelCategory::with_sizes({1})).name, "identity-on-nonneg");
  EXPECT_EQ(stdlib::default_hom(complex_dims({1})).name, "abs2");
  EXPECT_EQ(stdlib::default_hom(diamond()).kind, "unique");
  EXPECT_EQ(stdlib::default_hom(z2()).kind, "canonical-det");
}

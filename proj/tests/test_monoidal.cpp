#include "catcom/monoidal.hpp"
#include "catcom/stdlib/defaults.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace catcom;
using namespace fixtures;

namespace {

template <class C>
Representation<C> rep_of(const C& cat) {
  return Representation<C>(cat, stdlib::default_hom(cat));
}

template <class C>
void expect_passed(const Report& r, double max_error = 0.0) {
  for (const auto& c : r.checks) {
    EXPECT_TRUE(c.passed) << c.name << ": " << c.witness;
    EXPECT_LE(c.max_error, max_error) << c.name;
  }
}

}  // namespace

TEST(CompositeLaws, ExactOnRelations) {
  for (auto sizes : {std::vector<std::size_t>{1, 2}, std::vector<std::size_t>{2}}) {
    const auto cat = RelCategory::with_sizes(sizes);
    const auto rep = rep_of(cat);
    for (const auto& a : cat.objects())
      for (const auto& b : cat.objects()) {
        const auto r = check_composite(rep, build_composite(rep, a, b));
        expect_passed<RelCategory>(r);
        for (const auto& c : r.checks) EXPECT_TRUE(c.exhaustive) << c.name;
      }
  }
}

TEST(CompositeLaws, WithinToleranceOnComplexMatrices) {
  const auto cat = complex_dims({2});
  const auto rep = rep_of(cat);
  expect_passed<ComplexMatrixCategory>(check_composite(rep, build_composite(rep, cat.atom(0), cat.atom(0))), 1e-8);
}

TEST(CompositeLaws, JointProbabilityFactorsOnRelations) {
  // (a⊗b)∘(α⊗β) is nonempty iff both local pairs intersect
  const auto cat = RelCategory::with_sizes({2, 2});
  const auto rep = rep_of(cat);
  const auto A = cat.atom(0), B = cat.atom(1);
  const auto comp = build_composite(rep, A, B);
  const auto& sa = rep.space(A);
  const auto& sb = rep.space(B);
  for (std::uint64_t x = 0; x < 4; ++x)
    for (std::uint64_t y = 0; y < 4; ++y)
      for (std::uint64_t e = 0; e < 4; ++e)
        for (std::uint64_t f = 0; f < 4; ++f) {
          const auto joint = comp.product(rep.hat_coords(cat.subset_state(A, x)), rep.hat_coords(cat.subset_state(B, y)));
          const auto ce = sa.dual_coordinates(rep.effect_functional(cat.subset_effect(A, e)));
          const auto cf = sb.dual_coordinates(rep.effect_functional(cat.subset_effect(B, f)));
          const auto pi = comp.effect_product(ce, cf);
          const Rational expected = ((x & e) && (y & f)) ? 1 : 0;
          EXPECT_EQ(dot<Rational>(pi, joint), expected);
        }
}

TEST(Tomography, ComplexPairIsLocallyTomographic) {
  const auto cat = complex_dims({2, 2});
  const auto rep = rep_of(cat);
  const auto v = tomography_verdict(rep, build_composite(rep, cat.atom(0), cat.atom(1)));
  const std::size_t n = 2;
  EXPECT_EQ(v.dim_joint, (n * n) * (n * n));
  EXPECT_EQ(v.rank_lambda, 16u);
  EXPECT_TRUE(v.locally_tomographic);
  EXPECT_FALSE(v.kernel_witness.has_value());
}

TEST(Tomography, RealPairHasKernelWitness) {
  const auto cat = real_dims({2, 2});
  const auto rep = rep_of(cat);
  const auto comp = build_composite(rep, cat.atom(0), cat.atom(1));
  const auto v = tomography_verdict(rep, comp);
  const std::size_t n = 2, joint = n * n;
  EXPECT_EQ(v.dim_joint, joint * (joint + 1) / 2);
  EXPECT_LE(v.rank_lambda, (n * (n + 1) / 2) * (n * (n + 1) / 2));
  EXPECT_LT(v.rank_lambda, v.dim_joint);
  EXPECT_FALSE(v.locally_tomographic);
  ASSERT_TRUE(v.kernel_witness.has_value());
  const auto local = comp.localize(*v.kernel_witness);
  double norm = 0.0, entry = 0.0;
  for (double x : *v.kernel_witness) norm = std::max(norm, std::abs(x));
  for (std::size_t i = 0; i < local.rows(); ++i)
    for (std::size_t j = 0; j < local.cols(); ++j) entry = std::max(entry, std::abs(local(i, j)));
  EXPECT_GT(norm, 0.1);
  EXPECT_LE(entry, 1e-9);
}

TEST(Tomography, RelationPairIsNotLocallyTomographic) {
  // Λ factors through the 3x3 local bases, so its rank is at most 9 while
  // the joint space has dimension 2^4 - 1 = 15.
  const auto cat = RelCategory::with_sizes({2, 2});
  const auto rep = rep_of(cat);
  const auto comp = build_composite(rep, cat.atom(0), cat.atom(1));
  const auto v = tomography_verdict(rep, comp);
  EXPECT_EQ(v.dim_joint, 15u);
  EXPECT_EQ(v.rank_lambda, 9u);
  EXPECT_FALSE(v.locally_tomographic);
  ASSERT_TRUE(v.kernel_witness.has_value());
  EXPECT_EQ(v.witness_residual, 0.0);
  const auto local = comp.localize(*v.kernel_witness);
  for (std::size_t i = 0; i < local.rows(); ++i)
    for (std::size_t j = 0; j < local.cols(); ++j) EXPECT_EQ(local(i, j), 0);
}

TEST(MorphismProduct, CollisionsOnRelationsAreHarmless) {
  const auto cat = RelCategory::with_sizes({2});
  const auto r = check_welldefined_morphism_product(rep_of(cat));
  expect_passed<RelCategory>(r);
}

TEST(MorphismProduct, PhaseCollisionsOnComplexMatricesAreHarmless) {
  const auto cat = complex_dims({2});
  const auto r = check_welldefined_morphism_product(rep_of(cat));
  expect_passed<ComplexMatrixCategory>(r, 1e-8);
  EXPECT_GT(r.checks[0].cases, 0u);
}

TEST(CompactClosure, RelationsUpToSizeThree) {
  const auto cat = RelCategory::with_sizes({3});
  const auto rep = rep_of(cat);
  const auto a = cat.atom(0);
  const auto r = compact_closure_path(rep, a, a, a, a);
  expect_passed<RelCategory>(r);
  ASSERT_NE(r.find("name_roundtrip"), nullptr);
  EXPECT_EQ(r.find("name_roundtrip")->cases, 512u);
}

TEST(CompactClosure, ComplexMatricesUpToDimensionThree) {
  const auto cat = complex_dims({2, 3});
  const auto rep = rep_of(cat);
  const auto r = compact_closure_path(rep, cat.atom(0), cat.atom(1), cat.atom(1), cat.atom(0));
  expect_passed<ComplexMatrixCategory>(r, 1e-8);
  ASSERT_NE(r.find("name_product"), nullptr);
  EXPECT_GE(r.find("name_product")->cases, 100u);
}

TEST(CompactClosure, NameRoundTripByHand) {
  const auto cat = RelCategory::with_sizes({2});
  const auto a = cat.atom(0);
  const auto phi = cat.relation(a, a, {{0, 1}, {1, 1}});
  const auto name = name_of(cat, phi);
  EXPECT_EQ(cat.dom(name), cat.unit());
  EXPECT_EQ(unname(cat, a, a, name), phi);
}

TEST(MonoidalFunctor, HoldsOnRelationsAndMatrices) {
  const auto rel = RelCategory::with_sizes({1, 2});
  expect_passed<RelCategory>(monoidal_functor_check(rep_of(rel), rel.objects()));
  const auto c = complex_dims({2});
  expect_passed<ComplexMatrixCategory>(monoidal_functor_check(rep_of(c), c.objects()), 1e-8);
}

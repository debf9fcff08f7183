#include "catcom/normalize.hpp"
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

std::vector<double> random_vector(std::size_t n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

}  // namespace

class SeededProperty : public testing::TestWithParam<std::uint64_t> {};

TEST_P(SeededProperty, RelationFunctorPreservesRandomComposites) {
  const auto cat = RelCategory::with_sizes({3, 2});
  const auto rep = rep_of(cat);
  Rng rng(GetParam());
  const auto a = cat.atom(0), b = cat.atom(1);
  for (int k = 0; k < 20; ++k) {
    const auto f = *cat.sample_hom(a, b, rng);
    const auto g = *cat.sample_hom(b, a, rng);
    EXPECT_EQ(max_abs_diff(rep.rep_morphism(cat.compose(g, f)), rep.rep_morphism(g) * rep.rep_morphism(f)), 0.0);
  }
}

TEST_P(SeededProperty, ComplexFunctorPreservesRandomComposites) {
  const auto cat = complex_dims({2, 3});
  const auto rep = rep_of(cat);
  Rng rng(GetParam());
  const auto a = cat.atom(0), b = cat.atom(1);
  for (int k = 0; k < 20; ++k) {
    const auto f = *cat.sample_hom(a, b, rng);
    const auto g = *cat.sample_hom(b, b, rng);
    const auto lhs = rep.rep_morphism(cat.compose(g, f));
    const auto rhs = rep.rep_morphism(g) * rep.rep_morphism(f);
    double scale = 1.0;
    for (std::size_t i = 0; i < lhs.rows(); ++i)
      for (std::size_t j = 0; j < lhs.cols(); ++j) scale = std::max(scale, std::abs(lhs(i, j)));
    EXPECT_LE(max_abs_diff(lhs, rhs), 1e-8 * scale);
  }
}

TEST_P(SeededProperty, StateProductIsBilinear) {
  const auto cat = complex_dims({2, 2});
  const auto rep = rep_of(cat);
  const auto comp = build_composite(rep, cat.atom(0), cat.atom(1));
  Rng rng(GetParam());
  const auto v1 = random_vector(comp.dim_a, rng), v2 = random_vector(comp.dim_a, rng), w = random_vector(comp.dim_b, rng);
  std::vector<double> v12(comp.dim_a);
  for (std::size_t i = 0; i < v12.size(); ++i) v12[i] = 2.0 * v1[i] - v2[i];
  const auto lhs = comp.product(v12, w);
  const auto p1 = comp.product(v1, w), p2 = comp.product(v2, w);
  for (std::size_t i = 0; i < lhs.size(); ++i) EXPECT_NEAR(lhs[i], 2.0 * p1[i] - p2[i], 1e-8);
}

TEST_P(SeededProperty, TraceUnitIsMultiplicativeOnProductStates) {
  const auto cat = complex_dims({2, 3});
  const auto rep = rep_of(cat);
  UnitFamily<ComplexMatrixCategory> units(rep);
  const auto a = cat.atom(0), b = cat.atom(1);
  Rng rng(GetParam());
  for (int k = 0; k < 10; ++k) {
    const auto alpha = *cat.sample_hom(cat.unit(), a, rng);
    const auto beta = *cat.sample_hom(cat.unit(), b, rng);
    const double joint = units.at(cat.tensor(a, b))(rep.hat_coords(cat.tensor(alpha, beta)));
    const double local = units.at(a)(rep.hat_coords(alpha)) * units.at(b)(rep.hat_coords(beta));
    EXPECT_NEAR(joint, local, 1e-9 * std::max(1.0, local));
  }
}

TEST_P(SeededProperty, ContractionsStayPhysicalUnderComposition) {
  const auto cat = complex_dims({2});
  const auto rep = rep_of(cat);
  UnitFamily<ComplexMatrixCategory> units(rep);
  const PhysicalSubcategory<ComplexMatrixCategory> cu(units);
  const auto a = cat.atom(0);
  Rng rng(GetParam());
  for (int k = 0; k < 10; ++k) {
    const auto f = cat.sample_contraction(a, a, rng);
    const auto g = cat.sample_contraction(a, a, rng);
    EXPECT_TRUE(cu.contains(f));
    EXPECT_TRUE(cu.contains(cat.compose(g, f)));
    EXPECT_TRUE(cu.contains(cat.tensor(f, g)));
  }
}

TEST_P(SeededProperty, ValidationReportsAreReproducible) {
  CheckOptions opt;
  opt.seed = GetParam();
  opt.budget = 200;
  const auto cat = complex_dims({2});
  EXPECT_EQ(to_json(validate(cat, opt)).dump(), to_json(validate(cat, opt)).dump());
  const auto rep1 = rep_of(cat);
  const auto rep2 = rep_of(cat);
  EXPECT_EQ(to_json(check_functoriality(rep1, opt)).dump(), to_json(check_functoriality(rep2, opt)).dump());
}

INSTANTIATE_TEST_SUITE_P(Seeds, SeededProperty, testing::Values(0u, 1u, 7u, 42u, 1234u));

TEST(Properties, TomographyVerdictIsSymmetric) {
  const auto cat = RelCategory::with_sizes({1, 2});
  const auto rep = rep_of(cat);
  const auto a = cat.atom(0), b = cat.atom(1);
  const auto ab = tomography_verdict(rep, build_composite(rep, a, b));
  const auto ba = tomography_verdict(rep, build_composite(rep, b, a));
  EXPECT_EQ(ab.dim_joint, ba.dim_joint);
  EXPECT_EQ(ab.rank_lambda, ba.rank_lambda);
  EXPECT_EQ(ab.locally_tomographic, ba.locally_tomographic);
}

TEST(Properties, ExactBackendsReportZeroError) {
  const auto cat = RelCategory::with_sizes({2});
  const auto rep = rep_of(cat);
  UnitFamily<RelCategory> units(rep);
  Report r = check_functoriality(rep);
  r.append(canonical_scalar_iso(rep));
  r.append(validate_unit(units, cat.objects()));
  r.append(check_composite(rep, build_composite(rep, cat.atom(0), cat.atom(0))));
  for (const auto& c : r.checks) {
    EXPECT_TRUE(c.passed) << c.name;
    EXPECT_EQ(c.max_error, 0.0) << c.name;
  }
}

TEST(Properties, DimensionIsMultiplicativeOnlyWhenTomographic) {
  for (std::size_t n : {1u, 2u}) {
    const auto cat = complex_dims({n, 2});
    const auto rep = rep_of(cat);
    const auto a = cat.atom(0), b = cat.atom(1);
    EXPECT_EQ(rep.space(cat.tensor(a, b)).dim(), rep.space(a).dim() * rep.space(b).dim());
    const auto r = real_dims({n, 2});
    const auto rr = rep_of(r);
    const auto v = tomography_verdict(rr, build_composite(rr, r.atom(0), r.atom(1)));
    EXPECT_EQ(v.locally_tomographic, rr.space(r.tensor(r.atom(0), r.atom(1))).dim() ==
                                         rr.space(r.atom(0)).dim() * rr.space(r.atom(1)).dim());
  }
}

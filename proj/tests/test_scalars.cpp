#include "catcom/scalars.hpp"
#include "catcom/stdlib/defaults.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace catcom;
using namespace fixtures;

namespace {

/// Cyclic group Z/n on the unit object, elements g0 (identity) .. g{n-1}.
TableCategory cyclic(std::size_t n) {
  TableDescription d;
  d.name = "cyclic";
  d.objects = {"I"};
  d.unit = "I";
  auto g = [](std::size_t k) { return "g" + std::to_string(k); };
  for (std::size_t k = 0; k < n; ++k) d.morphisms.push_back({g(k), "I", "I"});
  d.identities = {{"I", g(0)}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d.composition.push_back({g(i), g(j), g((i + j) % n)});
  d.tensor_objects = {{"I", "I", "I"}};
  d.tensor_morphisms = d.composition;
  d.symmetry = {{{"I", "I"}, g(0)}};
  return TableCategory(d);
}

template <class C>
ErrorKind thrown_kind(const C& cat, const ScalarHom<C>& p) {
  try {
    require_valid_hom(cat, p);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Config;
}

// |det R_s| for a map-like matrix is 1 when x ↦ x∘s is a bijection and 0
// otherwise; computed straight from the category.
template <class C>
Rational bijectivity_indicator(const C& cat, const morphism_t<C>& s) {
  std::set<std::string> image;
  const auto elems = cat.states(cat.unit());
  for (const auto& x : elems) image.insert(cat.key(cat.compose(x, s)));
  return image.size() == elems.size() ? 1 : 0;
}

}  // namespace

TEST(ScalarMonoid, RelationScalarsAreBooleanAnd) {
  const auto cat = RelCategory::with_sizes({2});
  const auto m = scalar_monoid(cat);
  ASSERT_TRUE(m.finite);
  ASSERT_EQ(m.elements.size(), 2u);
  const std::size_t one = m.identity, zero = 1 - m.identity;
  EXPECT_TRUE(m.elements[zero].empty());
  EXPECT_EQ(m.table[zero][one], zero);
  EXPECT_EQ(m.table[one][one], one);
  EXPECT_EQ(m.table[zero][zero], zero);
}

TEST(CanonicalDet, RelationActionMatrices) {
  const auto cat = RelCategory::with_sizes({2});
  const auto m = scalar_monoid(cat);
  const std::size_t one = m.identity, zero = 1 - m.identity;
  // R_0 sends every x to 0: both rows select column `zero`
  Matrix<Rational> r0(2, 2);
  r0(0, zero) = 1;
  r0(1, zero) = 1;
  EXPECT_EQ(max_abs_diff(right_action_matrix(m, zero), r0), 0.0);
  EXPECT_EQ(max_abs_diff(right_action_matrix(m, one), Matrix<Rational>::identity(2)), 0.0);
  EXPECT_EQ(determinant(r0), 0);

  const auto p = canonical_det_hom(cat);
  const auto inclusion = rule_hom(cat, "identity-on-nonneg");
  for (const auto& s : m.elements) EXPECT_EQ(p(s), inclusion(s)) << cat.key(s);
}

TEST(CanonicalDet, GroupScalarsAreAllOne) {
  const auto cat = z2();
  const auto p = canonical_det_hom(cat);
  for (const auto& s : cat.states(cat.unit())) EXPECT_EQ(p(s), 1) << cat.key(s);
  const auto m = scalar_monoid(cat);
  const std::size_t s = 1 - m.identity;
  EXPECT_EQ(determinant(right_action_matrix(m, s)), -1);
}

TEST(CanonicalDet, MatchesBijectivityOracle) {
  std::vector<TableCategory> cats{z2(), and_monoid(), cyclic(3), cyclic(4)};
  for (const auto& cat : cats) {
    const auto p = canonical_det_hom(cat);
    for (const auto& s : cat.states(cat.unit())) EXPECT_EQ(p(s), bijectivity_indicator(cat, s)) << cat.key(s);
  }
  const auto rel = RelCategory::with_sizes({1});
  const auto p = canonical_det_hom(rel);
  for (const auto& s : rel.states(rel.unit())) EXPECT_EQ(p(s), bijectivity_indicator(rel, s));
}

TEST(CanonicalDet, InfiniteScalarsAreRejected) {
  const auto cat = complex_dims({2});
  try {
    (void)canonical_det_hom(cat);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InfiniteScalars);
  }
}

TEST(ValidateHom, DefaultsPassOnEveryBackend) {
  EXPECT_NO_THROW(require_valid_hom(RelCategory::with_sizes({2}), stdlib::default_hom(RelCategory::with_sizes({2}))));
  const auto cz = complex_dims({2});
  EXPECT_NO_THROW(require_valid_hom(cz, stdlib::default_hom(cz)));
  const auto rz = real_dims({2});
  EXPECT_NO_THROW(require_valid_hom(rz, stdlib::default_hom(rz)));
  const auto sl = diamond();
  EXPECT_NO_THROW(require_valid_hom(sl, stdlib::default_hom(sl)));
  const auto t = and_monoid();
  EXPECT_NO_THROW(require_valid_hom(t, stdlib::default_hom(t)));
}

TEST(ValidateHom, UnitMustMapToOne) {
  const auto cat = z2();
  EXPECT_EQ(thrown_kind(cat, table_hom(cat, {{"e", 2}, {"s", 2}})), ErrorKind::UnitViolation);
  EXPECT_EQ(thrown_kind(cat, table_hom(cat, {{"e", 0}, {"s", 0}})), ErrorKind::Degenerate);
}

TEST(ValidateHom, MultiplicativityAndSignAreEnforced) {
  const auto cat = z2();
  EXPECT_EQ(thrown_kind(cat, table_hom(cat, {{"e", 1}, {"s", 2}})), ErrorKind::NotMultiplicative);
  EXPECT_EQ(thrown_kind(cat, table_hom(cat, {{"e", 1}, {"s", -1}})), ErrorKind::Negative);
  const auto r = validate_hom(cat, table_hom(cat, {{"e", 1}, {"s", 2}}));
  EXPECT_NE(r.find("hom_multiplicative")->witness.find("s∘s"), std::string::npos);
}

TEST(ValidateHom, ComplexRulesAreSampled) {
  const auto cat = complex_dims({2});
  const auto r = validate_hom(cat, rule_hom(cat, "abs2"));
  EXPECT_TRUE(r.passed());
  EXPECT_GE(r.find("hom_multiplicative")->cases, 1000u);
  EXPECT_FALSE(r.find("hom_multiplicative")->exhaustive);
  EXPECT_TRUE(validate_hom(cat, rule_hom(cat, "abs")).passed());
  EXPECT_FALSE(validate_hom(cat, rule_hom(cat, "identity-on-nonneg")).passed());
}

TEST(ValidateHom, UnknownRuleIsConfigError) {
  const auto cat = complex_dims({2});
  try {
    (void)rule_hom(cat, "square");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Config);
  }
}

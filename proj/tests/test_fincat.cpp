#include "catcom/fincat/validate.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace catcom;
using namespace fixtures;

namespace {

template <class C>
void expect_clean(const C& cat) {
  const auto r = validate(cat);
  for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << cat.name() << ": " << c.name << ": " << c.witness;
}

}  // namespace

TEST(Validate, RelationsSatisfyEveryAxiom) {
  expect_clean(RelCategory::with_sizes({2}));
  expect_clean(RelCategory::with_sizes({1, 2}));
}

TEST(Validate, RelationsAreExhaustiveAtSmallSizes) {
  const auto r = validate(RelCategory::with_sizes({2}));
  ASSERT_NE(r.find("composition_associative"), nullptr);
  EXPECT_TRUE(r.find("composition_associative")->exhaustive);
  EXPECT_TRUE(r.find("snake_equations")->passed);
  EXPECT_FALSE(r.find("snake_equations")->vacuous);
}

TEST(Validate, MatrixBackendsSatisfyEveryAxiom) {
  expect_clean(complex_dims({2}));
  expect_clean(real_dims({2, 3}));
}

TEST(Validate, SemilatticeAndTablesSatisfyEveryAxiom) {
  expect_clean(diamond());
  expect_clean(z2());
  expect_clean(and_monoid());
}

TEST(Validate, TableWithWronglyTypedEntryReportsWitness) {
  auto d = monoid_on_unit("e");
  d.objects.push_back("A");
  d.morphisms.push_back({"a", "A", "A"});
  d.identities["A"] = "a";
  d.composition.push_back({"s", "s", "a"});
  d.composition.erase(d.composition.begin() + 3);
  const TableCategory cat(d);
  const auto r = validate(cat);
  const auto* typed = r.find("composition_table_typed");
  ASSERT_NE(typed, nullptr);
  EXPECT_FALSE(typed->passed);
  EXPECT_NE(typed->witness.find("s∘s"), std::string::npos);
}

TEST(Validate, NonAssociativeTableIsDetected) {
  TableDescription d;
  d.name = "magma";
  d.objects = {"I"};
  d.unit = "I";
  d.morphisms = {{"e", "I", "I"}, {"a", "I", "I"}, {"b", "I", "I"}};
  d.identities = {{"I", "e"}};
  // (a∘a)∘a = b∘a = b but a∘(a∘a) = a∘b = a
  d.composition = {{"a", "a", "b"}, {"b", "a", "b"}, {"a", "b", "a"}, {"b", "b", "a"}};
  d.tensor_objects = {{"I", "I", "I"}};
  d.tensor_morphisms = {{"e", "e", "e"}, {"e", "a", "a"}, {"a", "e", "a"}, {"e", "b", "b"}, {"b", "e", "b"},
                        {"a", "a", "b"}, {"b", "a", "b"}, {"a", "b", "a"}, {"b", "b", "a"}};
  d.symmetry = {{{"I", "I"}, "e"}};
  const auto r = validate(TableCategory(d));
  EXPECT_FALSE(r.find("composition_associative")->passed);
  EXPECT_FALSE(r.find("composition_associative")->witness.empty());
}

TEST(Validate, MissingIdentityIsRejected) {
  auto d = monoid_on_unit("e");
  d.identities.clear();
  try {
    TableCategory cat(d);
    FAIL() << "constructed without identities";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingIdentity);
  }
}

TEST(Relations, CompositionFollowsDefinition) {
  const auto cat = RelCategory::with_sizes({2});
  const auto a = cat.atom(0);
  const auto r = cat.relation(a, a, {{0, 1}});
  const auto s = cat.relation(a, a, {{1, 0}, {1, 1}});
  const auto sr = cat.compose(s, r);
  EXPECT_TRUE(sr.test(0, 0));
  EXPECT_TRUE(sr.test(0, 1));
  EXPECT_FALSE(sr.test(1, 0));
  EXPECT_FALSE(sr.test(1, 1));
  EXPECT_TRUE(cat.compose(r, s).test(1, 1));
  EXPECT_FALSE(cat.compose(r, s).test(1, 0));
}

TEST(Relations, HomSetsAreAllRelations) {
  const auto cat = RelCategory::with_sizes({2, 1});
  const auto h = cat.hom(cat.atom(0), cat.atom(0), 4096);
  ASSERT_TRUE(h.has_value());
  EXPECT_EQ(h->size(), 16u);
  EXPECT_EQ(cat.hom(cat.atom(0), cat.atom(1), 4096)->size(), 4u);
  EXPECT_EQ(cat.states(cat.atom(0)).size(), 4u);
}

TEST(Relations, SwapIsInvolutive) {
  const auto cat = RelCategory::with_sizes({2, 3});
  const auto a = cat.atom(0), b = cat.atom(1);
  EXPECT_TRUE(cat.equal(cat.compose(cat.swap(b, a), cat.swap(a, b)), cat.identity(cat.tensor(a, b))));
}

TEST(Semilattice, TensorIsMeetAndUnitIsTop) {
  const auto cat = diamond();
  const auto x = ObjectId{cat.index_of("x")}, y = ObjectId{cat.index_of("y")};
  EXPECT_EQ(cat.label(cat.tensor(x, y)), "bot");
  EXPECT_EQ(cat.tensor(x, cat.unit()), x);
  EXPECT_TRUE(cat.leq(x, cat.unit()));
  EXPECT_EQ(cat.states(x).size(), 0u);
  EXPECT_EQ(cat.effects(x).size(), 1u);
}

TEST(Semilattice, NonTopUnitIsRejected) {
  EXPECT_THROW(SemilatticeCategory("bad", {"a", "b"}, "a", {{"a", "b"}}), Error);
}

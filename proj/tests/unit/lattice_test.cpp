#include <gtest/gtest.h>

#include <set>

#include "fca/errors.hpp"
#include "fca/lattice.hpp"
#include "test_support.hpp"

using namespace fca;
namespace ft = fca::testing;

namespace {

using Edge = std::pair<ConceptId, ConceptId>;

std::set<std::pair<ft::Mask, ft::Mask>> as_masks(const std::vector<Concept>& cs) {
  std::set<std::pair<ft::Mask, ft::Mask>> out;
  for (const auto& c : cs) out.emplace(ft::to_mask(c.extent), ft::to_mask(c.intent));
  return out;
}

/// g_i has attributes m_1..m_i.
FormalContext staircase(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t m = 0; m <= g; ++m) pairs.emplace_back(g, m);
  return FormalContext::from_pairs(ft::numbered("g", n), ft::numbered("m", n), pairs);
}

}  // namespace

TEST(EnumerateConcepts, ToyContextCanonicalIds) {
  const auto cs = enumerate_concepts(ft::toy_context());
  ASSERT_EQ(cs.size(), 4u);
  // c0=(∅,M), c1=({g1},{m1,m2}), c2=({g2},{m2,m3}), c3=(G,{m2})
  EXPECT_EQ(ft::to_mask(cs[0].extent), 0b000u);
  EXPECT_EQ(ft::to_mask(cs[0].intent), 0b111u);
  EXPECT_EQ(ft::to_mask(cs[1].extent), 0b001u);
  EXPECT_EQ(ft::to_mask(cs[1].intent), 0b011u);
  EXPECT_EQ(ft::to_mask(cs[2].extent), 0b010u);
  EXPECT_EQ(ft::to_mask(cs[2].intent), 0b110u);
  EXPECT_EQ(ft::to_mask(cs[3].extent), 0b111u);
  EXPECT_EQ(ft::to_mask(cs[3].intent), 0b010u);
  for (std::size_t i = 0; i < cs.size(); ++i) EXPECT_EQ(cs[i].id, i);
}

TEST(EnumerateConcepts, EmptyRelationHasOnlyExtremes) {
  const FormalContext ctx({"g1", "g2"}, {"m1", "m2"}, {AttributeSet(2), AttributeSet(2)});
  const auto cs = enumerate_concepts(ctx);
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_EQ(cs[0].extent.count(), 0u);
  EXPECT_EQ(cs[0].intent.count(), 2u);
  EXPECT_EQ(cs[1].extent.count(), 2u);
  EXPECT_EQ(cs[1].intent.count(), 0u);
}

TEST(EnumerateConcepts, EmptyContextYieldsOneConcept) {
  const FormalContext ctx({}, {}, {});
  EXPECT_EQ(enumerate_concepts(ctx).size(), 1u);
  const auto lat = build_lattice(ctx);
  EXPECT_EQ(lat.num_edges(), 0u);
  EXPECT_EQ(lat.top(), lat.bottom());
}

TEST(EnumerateConcepts, MatchesBruteForceOracle) {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 150; ++rep) {
    const auto ctx = ft::random_small_context(rng);
    const auto cs = enumerate_concepts(ctx);
    EXPECT_EQ(as_masks(cs), ft::brute_force_concepts(ctx));
    EXPECT_EQ(as_masks(cs).size(), cs.size()) << "duplicate concept";
  }
}

TEST(EnumerateConcepts, IdsFollowDescendingLecticIntents) {
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 50; ++rep) {
    const auto ctx = ft::random_small_context(rng);
    const auto cs = enumerate_concepts(ctx);
    for (std::size_t i = 1; i < cs.size(); ++i) EXPECT_TRUE(lectic_less(cs[i].intent, cs[i - 1].intent));
  }
}

TEST(EnumerateConcepts, ThreadCountDoesNotChangeOutput) {
  std::mt19937_64 rng(9);
  const auto ctx = ft::random_context(rng, 60, 30, 0.2);
  const auto one = enumerate_concepts(ctx, {1'000'000, 1});
  const auto four = enumerate_concepts(ctx, {1'000'000, 4});
  ASSERT_EQ(one.size(), four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].intent, four[i].intent);
    EXPECT_EQ(one[i].extent, four[i].extent);
  }
}

TEST(EnumerateConcepts, CapacityLimitReportsPartialCount) {
  std::mt19937_64 rng(10);
  const auto ctx = ft::random_context(rng, 12, 12, 0.5);
  const auto total = enumerate_concepts(ctx).size();
  ASSERT_GT(total, 5u);
  for (unsigned threads : {1u, 3u}) {
    try {
      enumerate_concepts(ctx, {5, threads});
      FAIL() << "expected CapacityError";
    } catch (const CapacityError& e) {
      EXPECT_EQ(e.limit(), 5u);
      EXPECT_GE(e.partial_count(), 5u);
    }
  }
  EXPECT_EQ(enumerate_concepts(ctx, {total, 1}).size(), total);
}

TEST(CoverGraph, ToyContextEdges) {
  const auto lat = build_lattice(ft::toy_context());
  EXPECT_EQ(lat.edges(), (std::vector<Edge>{{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
  EXPECT_EQ(lat.top(), 3u);
  EXPECT_EQ(lat.bottom(), 0u);
}

TEST(CoverGraph, StaircaseIsChain) {
  // Every object has m0, so the intents are {m0..mi} for i < n: an n-chain.
  const auto lat = build_lattice(staircase(4));
  ASSERT_EQ(lat.size(), 4u);
  ASSERT_EQ(lat.num_edges(), 3u);
  for (ConceptId id = 0; id < lat.size(); ++id) {
    EXPECT_LE(lat.upper_neighbors(id).size(), 1u);
    EXPECT_LE(lat.lower_neighbors(id).size(), 1u);
  }
}

TEST(CoverGraph, StaircaseWithEmptyRowIsLongerChain) {
  const auto s = staircase(4);
  std::vector<AttributeSet> rows{AttributeSet(4)};
  for (std::size_t g = 0; g < 4; ++g) rows.push_back(s.row(g));
  const FormalContext ctx(ft::numbered("g", 5), ft::numbered("m", 4), rows);
  const auto lat = build_lattice(ctx);
  ASSERT_EQ(lat.size(), 5u);
  ASSERT_EQ(lat.num_edges(), 4u);
}

TEST(CoverGraph, FullOneByOne) {
  const auto ctx = FormalContext::from_pairs({"g"}, {"m"}, {{0, 0}});
  const auto lat = build_lattice(ctx);
  // ∅'' = {g}, so (G, {m}) is the only concept.
  ASSERT_EQ(lat.size(), 1u);
  EXPECT_TRUE(lat.edges().empty());
}

TEST(CoverGraph, EqualsTransitiveReductionOfContainment) {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 100; ++rep) {
    const auto ctx = ft::random_small_context(rng, 10);
    const auto lat = build_lattice(ctx);
    std::vector<ft::Mask> extents;
    for (const auto& c : lat.concepts()) extents.push_back(ft::to_mask(c.extent));
    const auto e = lat.edges();
    EXPECT_EQ(std::set<Edge>(e.begin(), e.end()), ft::brute_force_cover(extents));
    for (auto [lo, up] : e) EXPECT_LT(lat.concept_at(lo).extent.count(), lat.concept_at(up).extent.count());
  }
}

TEST(CoverGraph, ExtentAndIntentOrdersAreDual) {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 30; ++rep) {
    const auto ctx = ft::random_small_context(rng);
    const auto cs = enumerate_concepts(ctx);
    for (const auto& x : cs)
      for (const auto& y : cs)
        EXPECT_EQ(x.extent.is_subset_of(y.extent), y.intent.is_subset_of(x.intent));
  }
}

TEST(CoverGraph, IncompleteConceptSetIsInconsistent) {
  const auto ctx = ft::toy_context();
  auto cs = enumerate_concepts(ctx);
  cs.erase(cs.begin() + 1);
  for (std::size_t i = 0; i < cs.size(); ++i) cs[i].id = i;
  EXPECT_THROW(build_cover_graph(ctx, cs), ConsistencyError);
}

TEST(CoverGraph, NonConceptRejected) {
  const auto ctx = ft::toy_context();
  auto cs = enumerate_concepts(ctx);
  cs[1].intent.erase(0);
  EXPECT_THROW(build_cover_graph(ctx, cs), ConsistencyError);
}

TEST(Subconcepts, ToyContext) {
  const auto lat = build_lattice(ft::toy_context());
  EXPECT_EQ(subconcepts_of(lat, 3), (std::vector<ConceptId>{0, 1, 2}));
  EXPECT_TRUE(subconcepts_of(lat, 0).empty());
  EXPECT_EQ(subconcepts_of(lat, 1), (std::vector<ConceptId>{0}));
  EXPECT_THROW(subconcepts_of(lat, 4), UnknownConceptError);
}

TEST(Subconcepts, MatchesExtentContainment) {
  std::mt19937_64 rng(14);
  for (int rep = 0; rep < 30; ++rep) {
    const auto lat = build_lattice(ft::random_small_context(rng));
    for (ConceptId id = 0; id < lat.size(); ++id) {
      std::vector<ConceptId> expected;
      for (ConceptId o = 0; o < lat.size(); ++o)
        if (o != id && lat.leq(o, id)) expected.push_back(o);
      EXPECT_EQ(subconcepts_of(lat, id), expected);
    }
  }
}

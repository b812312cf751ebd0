#pragma once

// Fixtures, random generators and brute-force oracles shared by the unit
// and acceptance suites. The oracles use only FormalContext::incident and
// plain loops, never the bitset derivation or lattice code they check.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fca/context.hpp"

namespace fca::testing {

inline std::string fixture(const std::string& name) { return std::string(FCA_FIXTURE_DIR) + "/" + name; }
inline std::string golden(const std::string& name) { return std::string(FCA_GOLDEN_DIR) + "/" + name; }

/// G={g1,g2,g3}, M={m1,m2,m3}, I={(g1,m1),(g1,m2),(g2,m2),(g2,m3),(g3,m2)}.
inline FormalContext toy_context() {
  return FormalContext::from_pairs({"g1", "g2", "g3"}, {"m1", "m2", "m3"},
                                   {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 1}});
}

inline std::vector<std::string> numbered(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

inline FormalContext random_context(std::mt19937_64& rng, std::size_t objects, std::size_t attributes,
                                    double density) {
  std::bernoulli_distribution bit(density);
  std::vector<AttributeSet> rows(objects, AttributeSet::empty(attributes));
  for (auto& r : rows)
    for (std::size_t m = 0; m < attributes; ++m)
      if (bit(rng)) r.insert(m);
  return FormalContext(numbered("g", objects), numbered("m", attributes), std::move(rows));
}

/// Random context with |G|, |M| drawn from [1, max_side] and density from
/// {0.1, 0.3, 0.5}.
inline FormalContext random_small_context(std::mt19937_64& rng, std::size_t max_side = 12) {
  std::uniform_int_distribution<std::size_t> side(1, max_side);
  static constexpr double kDensities[] = {0.1, 0.3, 0.5};
  std::uniform_int_distribution<int> pick(0, 2);
  const std::size_t g = side(rng), m = side(rng);
  return random_context(rng, g, m, kDensities[pick(rng)]);
}

using Mask = std::uint64_t;

/// Attribute mask shared by every object in `objects` (naive loop).
inline Mask naive_intent(const FormalContext& ctx, Mask objects) {
  Mask out = 0;
  for (std::size_t m = 0; m < ctx.num_attributes(); ++m) {
    bool all = true;
    for (std::size_t g = 0; g < ctx.num_objects() && all; ++g)
      if (((objects >> g) & 1U) && !ctx.incident(g, m)) all = false;
    if (all) out |= Mask{1} << m;
  }
  return out;
}

inline Mask naive_extent(const FormalContext& ctx, Mask attributes) {
  Mask out = 0;
  for (std::size_t g = 0; g < ctx.num_objects(); ++g) {
    bool all = true;
    for (std::size_t m = 0; m < ctx.num_attributes() && all; ++m)
      if (((attributes >> m) & 1U) && !ctx.incident(g, m)) all = false;
    if (all) out |= Mask{1} << g;
  }
  return out;
}

template <class Set>
Mask to_mask(const Set& s) {
  Mask out = 0;
  s.for_each([&](std::size_t i) { out |= Mask{1} << i; });
  return out;
}

template <class Set>
Set from_mask(Mask mask, std::size_t universe) {
  Set s(universe);
  for (std::size_t i = 0; i < universe; ++i)
    if ((mask >> i) & 1U) s.insert(i);
  return s;
}

/// Every (extent, intent) pair as masks, from closing all 2^|G| object
/// subsets. Requires |G|, |M| <= 20.
inline std::set<std::pair<Mask, Mask>> brute_force_concepts(const FormalContext& ctx) {
  std::set<std::pair<Mask, Mask>> out;
  const Mask total = Mask{1} << ctx.num_objects();
  for (Mask a = 0; a < total; ++a) {
    const Mask intent = naive_intent(ctx, a);
    out.emplace(naive_extent(ctx, intent), intent);
  }
  return out;
}

/// Generator count of every closed intent: how many C subset of G have C' =
/// intent. Every C has exactly one intent, so the counts sum to 2^|G|.
inline std::map<Mask, std::uint64_t> brute_force_generator_counts(const FormalContext& ctx) {
  std::map<Mask, std::uint64_t> out;
  const Mask total = Mask{1} << ctx.num_objects();
  for (Mask c = 0; c < total; ++c) ++out[naive_intent(ctx, c)];
  return out;
}

/// Pairs (lower, upper) of the transitive reduction of strict extent
/// containment over `extents`, by pairwise comparison.
inline std::set<std::pair<std::size_t, std::size_t>> brute_force_cover(const std::vector<Mask>& extents) {
  auto below = [&](std::size_t x, std::size_t y) {
    return x != y && (extents[x] & ~extents[y]) == 0 && extents[x] != extents[y];
  };
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t x = 0; x < extents.size(); ++x)
    for (std::size_t y = 0; y < extents.size(); ++y) {
      if (!below(x, y)) continue;
      bool direct = true;
      for (std::size_t z = 0; z < extents.size() && direct; ++z)
        if (below(x, z) && below(z, y)) direct = false;
      if (direct) out.emplace(x, y);
    }
  return out;
}

}  // namespace fca::testing

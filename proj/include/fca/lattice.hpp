#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "fca/context.hpp"

namespace fca {

using ConceptId = std::size_t;

struct Concept {
  ConceptId id = 0;
  ObjectSet extent;
  AttributeSet intent;
};

struct EnumerationOptions {
  std::size_t max_concepts = 10'000'000;
  /// Worker count for the top-level Close-by-One fan-out. 0 means one per
  /// hardware thread. Output order does not depend on it.
  unsigned threads = 1;
};

/// All concepts of `ctx`, each exactly once.
///
/// Ids follow the canonical order: intents sorted in descending lectic
/// order. That puts the bottom concept (M', M) at id 0 and the top concept
/// (G, G') last, and every subconcept has a smaller id than its
/// superconcepts. Throws CapacityError past `opts.max_concepts`.
std::vector<Concept> enumerate_concepts(const FormalContext& ctx, const EnumerationOptions& opts = {});

/// Concepts plus the covering relation. Immutable after construction.
class ConceptLattice {
 public:
  const std::vector<Concept>& concepts() const noexcept { return concepts_; }
  std::size_t size() const noexcept { return concepts_.size(); }
  const Concept& concept_at(ConceptId id) const;

  const std::vector<ConceptId>& upper_neighbors(ConceptId id) const;
  const std::vector<ConceptId>& lower_neighbors(ConceptId id) const;

  ConceptId top() const noexcept { return top_; }
  ConceptId bottom() const noexcept { return bottom_; }

  /// (lower, upper) pairs sorted lexicographically.
  std::vector<std::pair<ConceptId, ConceptId>> edges() const;
  std::size_t num_edges() const noexcept { return num_edges_; }

  /// True when `lower` <= `upper` in the lattice order.
  bool leq(ConceptId lower, ConceptId upper) const;

  /// Identifies lattices built by the same build_cover_graph call; copies
  /// share it.
  std::uint64_t token() const noexcept { return token_; }

 private:
  friend ConceptLattice build_cover_graph(const FormalContext&, std::vector<Concept>);

  std::vector<Concept> concepts_;
  std::vector<std::vector<ConceptId>> upper_;
  std::vector<std::vector<ConceptId>> lower_;
  ConceptId top_ = 0;
  ConceptId bottom_ = 0;
  std::size_t num_edges_ = 0;
  std::uint64_t token_ = 0;
};

/// Computes the Hasse diagram of the complete concept set of `ctx`.
///
/// Ids must be 0..n-1 in vector order. Lower neighbours of (A, B) are found
/// by closing B + {m} for each m outside B and keeping the minimal
/// candidates. Throws ConsistencyError if a neighbour is missing from
/// `concepts` or top/bottom are not unique.
ConceptLattice build_cover_graph(const FormalContext& ctx, std::vector<Concept> concepts);

/// enumerate_concepts + build_cover_graph.
ConceptLattice build_lattice(const FormalContext& ctx, const EnumerationOptions& opts = {});

/// Ids strictly below `id`, ascending. Throws UnknownConceptError.
std::vector<ConceptId> subconcepts_of(const ConceptLattice& lat, ConceptId id);

}  // namespace fca

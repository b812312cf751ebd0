#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fca/lattice.hpp"
#include "fca/stability.hpp"

namespace fca {

struct SelectionCriterion {
  enum class Kind { Iceberg, TopKExtent, TopKStability, StabilityThreshold };

  Kind kind = Kind::Iceberg;
  std::size_t count = 0;    // min_extent for Iceberg, k for the top-k kinds
  double threshold = 0.0;   // StabilityThreshold only
  bool exclude_extremes = false;  // TopKStability only

  static SelectionCriterion iceberg(std::size_t min_extent) { return {Kind::Iceberg, min_extent, 0.0, false}; }
  static SelectionCriterion top_k_extent(std::size_t k) { return {Kind::TopKExtent, k, 0.0, false}; }
  static SelectionCriterion top_k_stability(std::size_t k, bool exclude_extremes) {
    return {Kind::TopKStability, k, 0.0, exclude_extremes};
  }
  static SelectionCriterion stability_threshold(double theta) {
    return {Kind::StabilityThreshold, 0, theta, false};
  }

  std::string name() const;
};

struct SelectionResult {
  /// Ascending id for filters, rank order for top-k.
  std::vector<ConceptId> selected_ids;
  SelectionCriterion criterion;
  /// Covering pairs (lower, upper) of the lattice order restricted to the
  /// selection, sorted.
  std::vector<std::pair<ConceptId, ConceptId>> induced_edges;
  std::uint64_t lattice_token = 0;
};

/// Concepts with |extent| >= min_extent. Always an order filter.
SelectionResult iceberg_filter(const ConceptLattice& lat, std::size_t min_extent);

/// The k largest extents, ties by ascending id.
SelectionResult top_k_extent(const ConceptLattice& lat, std::size_t k);

/// The k most stable concepts, ties by ascending id. With
/// `exclude_extremes` the trivial extremes are skipped: the bottom when its
/// extent is empty and the top when its intent is empty.
SelectionResult top_k_stability(const ConceptLattice& lat, const StabilityReport& report, std::size_t k,
                                bool exclude_extremes);

/// Concepts with sigma strictly greater than theta. Throws
/// std::invalid_argument outside [0, 1].
SelectionResult stability_threshold_filter(const ConceptLattice& lat, const StabilityReport& report,
                                           double theta);

/// Transitive reduction of the lattice order restricted to `ids`.
std::vector<std::pair<ConceptId, ConceptId>> induced_cover_edges(const ConceptLattice& lat,
                                                                 const std::vector<ConceptId>& ids);

struct SelectionOverlap {
  double jaccard = 1.0;
  std::vector<ConceptId> common;  // ascending
};

/// Jaccard index of the selected id sets (1.0 when both are empty). Throws
/// MismatchedLatticeError when the selections come from different lattices.
SelectionOverlap selection_overlap(const SelectionResult& a, const SelectionResult& b);

}  // namespace fca

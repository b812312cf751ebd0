#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fca/context.hpp"
#include "fca/lattice.hpp"

namespace fca {

using BigCount = boost::multiprecision::cpp_int;

/// Stability of one concept (A, B): sigma = N / 2^|A| where N counts the
/// subsets C of A with C' = B.
struct ConceptStability {
  /// From the exact count when one is kept, otherwise the float recurrence.
  double sigma = 0.0;
  /// The float recurrence 1 - sum over proper subconcepts (D, E) of
  /// sigma(D) * 2^(|D| - |A|), kept as an independent cross-check.
  double sigma_recurrence = 0.0;
  std::optional<BigCount> generator_count;
  std::size_t extent_size = 0;
};

class StabilityReport {
 public:
  StabilityReport() = default;
  StabilityReport(std::uint64_t lattice_token, std::vector<ConceptStability> per_concept)
      : lattice_token_(lattice_token), per_concept_(std::move(per_concept)) {}

  std::size_t size() const noexcept { return per_concept_.size(); }
  const ConceptStability& at(ConceptId id) const { return per_concept_.at(id); }
  const std::vector<ConceptStability>& per_concept() const noexcept { return per_concept_; }
  std::vector<ConceptStability>& mutable_per_concept() noexcept { return per_concept_; }
  std::uint64_t lattice_token() const noexcept { return lattice_token_; }

  bool has_exact_counts() const;

 private:
  std::uint64_t lattice_token_ = 0;
  std::vector<ConceptStability> per_concept_;
};

struct BruteForceStability {
  double sigma = 0.0;
  BigCount generator_count;
};

/// Enumerates all 2^|A| subsets of the extent. Throws ExtentTooLargeError
/// when |A| > max_extent.
BruteForceStability stability_bruteforce(const FormalContext& ctx, const Concept& c,
                                         std::size_t max_extent = 20);

struct StabilityOptions {
  bool exact_counts = true;
  /// Up to this many concepts, downsets are accumulated as bitsets over the
  /// lattice (n^2 bits). Above it, each downset is recomputed by a walk over
  /// lower-neighbour edges.
  std::size_t downset_bitset_limit = 16384;
};

/// Exact stability of every concept of a complete lattice, bottom-up in
/// ascending extent size.
StabilityReport stability_all(const FormalContext& ctx, const ConceptLattice& lat,
                              const StabilityOptions& opts = {});

/// True iff the generator counts sum to exactly 2^|G|. False when counts
/// are missing.
bool verify_counting_identity(const StabilityReport& report, const FormalContext& ctx);

/// N / 2^k as a double, without overflowing for large k.
double ratio_to_double(const BigCount& numerator, std::size_t log2_denominator);

/// Exact three-way comparison of two concepts' sigma. Uses the generator
/// counts when both are present, otherwise the doubles.
int compare_sigma(const ConceptStability& a, const ConceptStability& b);

}  // namespace fca

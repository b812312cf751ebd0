#pragma once

#include <string>
#include <vector>

#include "fca/context.hpp"
#include "fca/lattice.hpp"
#include "fca/selection.hpp"
#include "fca/stability.hpp"

namespace fca {

// All JSON output is pretty-printed with sorted keys, LF line endings and a
// trailing newline, so identical inputs give identical bytes.

/// Array of {id, extent: [object names], intent: [attribute names]}.
std::string concepts_json(const FormalContext& ctx, const std::vector<Concept>& concepts);

/// {concepts: [...], edges: [[lower, upper], ...]}.
std::string lattice_json(const FormalContext& ctx, const ConceptLattice& lat);

/// Array of {id, extent_size, sigma, generator_count}; sigma rounded to 12
/// significant digits, generator_count as a decimal string.
std::string stability_json(const StabilityReport& report);

/// Lattice schema restricted to the selection plus a "criterion" object.
std::string selection_json(const FormalContext& ctx, const ConceptLattice& lat, const SelectionResult& sel);

/// Graphviz digraph, one box per selected concept labelled
/// "intent | extent size | σ=value" (4 significant digits), edges from lower
/// to upper along the induced cover relation.
std::string selection_dot(const FormalContext& ctx, const ConceptLattice& lat, const StabilityReport& report,
                          const SelectionResult& sel);

/// printf("%.*g") of `value`.
std::string format_significant(double value, int digits);

}  // namespace fca

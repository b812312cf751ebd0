#include "fca/selection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "fca/errors.hpp"

namespace fca {
namespace {

SelectionResult finish(const ConceptLattice& lat, std::vector<ConceptId> ids, SelectionCriterion criterion) {
  SelectionResult r;
  r.induced_edges = induced_cover_edges(lat, ids);
  r.selected_ids = std::move(ids);
  r.criterion = criterion;
  r.lattice_token = lat.token();
  return r;
}

void require_matching(const ConceptLattice& lat, const StabilityReport& report) {
  if (report.lattice_token() != lat.token() || report.size() != lat.size()) throw MismatchedLatticeError();
}

/// Exact test of N / 2^|A| > theta; theta is a dyadic rational like every
/// finite double.
bool sigma_exceeds(const ConceptStability& s, double theta) {
  if (!s.generator_count) return s.sigma > theta;
  if (theta <= 0.0) return true;  // sigma > 0 always
  int exp = 0;
  const double frac = std::frexp(theta, &exp);  // theta = frac * 2^exp, frac in [0.5, 1)
  const auto mantissa = static_cast<std::uint64_t>(std::ldexp(frac, 53));
  // N * 2^-|A| > mantissa * 2^(exp - 53)  <=>  N * 2^(53 - exp) > mantissa * 2^|A|
  BigCount lhs = *s.generator_count;
  BigCount rhs = mantissa;
  const long shift_lhs = 53L - exp;
  if (shift_lhs >= 0)
    lhs <<= static_cast<unsigned>(shift_lhs);
  else
    rhs <<= static_cast<unsigned>(-shift_lhs);
  rhs <<= s.extent_size;
  return lhs > rhs;
}

}  // namespace

std::string SelectionCriterion::name() const {
  char buf[64];
  switch (kind) {
    case Kind::Iceberg:
      std::snprintf(buf, sizeof buf, "iceberg(min_extent=%zu)", count);
      break;
    case Kind::TopKExtent:
      std::snprintf(buf, sizeof buf, "top_k_extent(k=%zu)", count);
      break;
    case Kind::TopKStability:
      std::snprintf(buf, sizeof buf, "top_k_stability(k=%zu%s)", count,
                    exclude_extremes ? ", exclude_extremes" : "");
      break;
    case Kind::StabilityThreshold:
      std::snprintf(buf, sizeof buf, "stability_threshold(theta=%.12g)", threshold);
      break;
  }
  return buf;
}

std::vector<std::pair<ConceptId, ConceptId>> induced_cover_edges(const ConceptLattice& lat,
                                                                 const std::vector<ConceptId>& ids) {
  const std::size_t n = lat.size();
  std::vector<char> selected(n, 0);
  for (ConceptId id : ids) {
    if (id >= n) throw UnknownConceptError(id);
    selected[id] = 1;
  }

  std::vector<std::pair<ConceptId, ConceptId>> edges;
  std::vector<std::size_t> stamp(n, n);
  std::vector<ConceptId> stack, hits;
  for (ConceptId from : ids) {
    // Walk upwards; the first selected concept on every path is a candidate.
    hits.clear();
    stack.assign(1, from);
    while (!stack.empty()) {
      const ConceptId c = stack.back();
      stack.pop_back();
      for (ConceptId up : lat.upper_neighbors(c)) {
        if (stamp[up] == from) continue;
        stamp[up] = from;
        if (selected[up])
          hits.push_back(up);
        else
          stack.push_back(up);
      }
    }
    for (ConceptId h : hits) {
      const bool covered = std::any_of(hits.begin(), hits.end(), [&](ConceptId other) {
        return other != h && lat.leq(other, h);
      });
      if (!covered) edges.emplace_back(from, h);
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

SelectionResult iceberg_filter(const ConceptLattice& lat, std::size_t min_extent) {
  std::vector<ConceptId> ids;
  for (const auto& c : lat.concepts())
    if (c.extent.count() >= min_extent) ids.push_back(c.id);
  return finish(lat, std::move(ids), SelectionCriterion::iceberg(min_extent));
}

SelectionResult top_k_extent(const ConceptLattice& lat, std::size_t k) {
  std::vector<std::pair<std::size_t, ConceptId>> keyed;
  keyed.reserve(lat.size());
  for (const auto& c : lat.concepts()) keyed.emplace_back(c.extent.count(), c.id);
  const std::size_t requested = k;
  k = std::min(k, keyed.size());
  std::partial_sort(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(k), keyed.end(),
                    [](const auto& a, const auto& b) {
                      return a.first != b.first ? a.first > b.first : a.second < b.second;
                    });
  std::vector<ConceptId> ids;
  ids.reserve(k);
  for (std::size_t i = 0; i < k; ++i) ids.push_back(keyed[i].second);
  return finish(lat, std::move(ids), SelectionCriterion::top_k_extent(requested));
}

namespace {

bool is_trivial_extreme(const ConceptLattice& lat, ConceptId id) {
  const auto& c = lat.concept_at(id);
  return (id == lat.bottom() && c.extent.none()) || (id == lat.top() && c.intent.none());
}

}  // namespace

SelectionResult top_k_stability(const ConceptLattice& lat, const StabilityReport& report, std::size_t k,
                                bool exclude_extremes) {
  require_matching(lat, report);
  const std::size_t requested = k;
  std::vector<ConceptId> ids;
  ids.reserve(lat.size());
  for (ConceptId id = 0; id < lat.size(); ++id) {
    if (exclude_extremes && is_trivial_extreme(lat, id)) continue;
    ids.push_back(id);
  }
  k = std::min(k, ids.size());
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(k), ids.end(),
                    [&](ConceptId a, ConceptId b) {
                      const int cmp = compare_sigma(report.at(a), report.at(b));
                      return cmp != 0 ? cmp > 0 : a < b;
                    });
  ids.resize(k);
  return finish(lat, std::move(ids), SelectionCriterion::top_k_stability(requested, exclude_extremes));
}

SelectionResult stability_threshold_filter(const ConceptLattice& lat, const StabilityReport& report,
                                           double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("stability threshold must lie in [0, 1]");
  require_matching(lat, report);
  std::vector<ConceptId> ids;
  for (ConceptId id = 0; id < lat.size(); ++id)
    if (sigma_exceeds(report.at(id), theta)) ids.push_back(id);
  return finish(lat, std::move(ids), SelectionCriterion::stability_threshold(theta));
}

SelectionOverlap selection_overlap(const SelectionResult& a, const SelectionResult& b) {
  if (a.lattice_token != b.lattice_token) throw MismatchedLatticeError();
  std::vector<ConceptId> x = a.selected_ids, y = b.selected_ids;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  SelectionOverlap out;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out.common));
  const std::size_t uni = x.size() + y.size() - out.common.size();
  out.jaccard = uni == 0 ? 1.0 : static_cast<double>(out.common.size()) / static_cast<double>(uni);
  return out;
}

}  // namespace fca

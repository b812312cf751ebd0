#include "fca/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fca/errors.hpp"

namespace fca {

bool StabilityReport::has_exact_counts() const {
  return std::all_of(per_concept_.begin(), per_concept_.end(),
                     [](const ConceptStability& s) { return s.generator_count.has_value(); });
}

double ratio_to_double(const BigCount& numerator, std::size_t log2_denominator) {
  if (numerator.is_zero()) return 0.0;
  const auto bits = static_cast<long>(boost::multiprecision::msb(numerator)) + 1;
  constexpr long kKeep = 62;
  const long shift = std::max(0L, bits - kKeep);
  const BigCount head = numerator >> shift;
  const auto mantissa = static_cast<double>(head.convert_to<std::uint64_t>());
  return std::ldexp(mantissa, static_cast<int>(shift - static_cast<long>(log2_denominator)));
}

int compare_sigma(const ConceptStability& a, const ConceptStability& b) {
  if (a.generator_count && b.generator_count) {
    const auto& na = *a.generator_count;
    const auto& nb = *b.generator_count;
    // na / 2^ea  vs  nb / 2^eb
    BigCount lhs = na, rhs = nb;
    if (a.extent_size >= b.extent_size)
      rhs <<= (a.extent_size - b.extent_size);
    else
      lhs <<= (b.extent_size - a.extent_size);
    return lhs < rhs ? -1 : (rhs < lhs ? 1 : 0);
  }
  return a.sigma < b.sigma ? -1 : (b.sigma < a.sigma ? 1 : 0);
}

BruteForceStability stability_bruteforce(const FormalContext& ctx, const Concept& c,
                                         std::size_t max_extent) {
  const auto objects = c.extent.indices();
  const std::size_t k = objects.size();
  if (k > max_extent || k >= 64) throw ExtentTooLargeError(k, std::min<std::size_t>(max_extent, 63));

  std::uint64_t hits = 0;
  const std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    AttributeSet derived = ctx.all_attributes();
    for (std::size_t i = 0; i < k; ++i)
      if ((mask >> i) & 1U) derived &= ctx.row(objects[i]);
    if (derived == c.intent) ++hits;
  }
  BruteForceStability out;
  out.generator_count = hits;
  out.sigma = std::ldexp(static_cast<double>(hits), -static_cast<int>(k));
  return out;
}

StabilityReport stability_all(const FormalContext& ctx, const ConceptLattice& lat,
                              const StabilityOptions& opts) {
  const std::size_t n = lat.size();
  if (n > 0 && lat.concept_at(0).extent.universe() != ctx.num_objects())
    throw std::invalid_argument("lattice was not built from this context");
  std::vector<ConceptStability> out(n);
  for (ConceptId id = 0; id < n; ++id) out[id].extent_size = lat.concept_at(id).extent.count();

  std::vector<ConceptId> order(n);
  std::iota(order.begin(), order.end(), ConceptId{0});
  std::stable_sort(order.begin(), order.end(), [&](ConceptId a, ConceptId b) {
    return out[a].extent_size < out[b].extent_size;
  });

  const bool use_bitsets = n <= opts.downset_bitset_limit;
  std::vector<ConceptSet> downsets;
  if (use_bitsets) downsets.resize(n);
  std::vector<std::size_t> stamp;
  std::vector<ConceptId> stack, below;
  if (!use_bitsets) stamp.assign(n, n);

  for (ConceptId id : order) {
    below.clear();
    if (use_bitsets) {
      ConceptSet ds(n);
      for (ConceptId lo : lat.lower_neighbors(id)) {
        ds.insert(lo);
        ds |= downsets[lo];
      }
      ds.for_each([&](std::size_t d) { below.push_back(d); });
      downsets[id] = std::move(ds);
    } else {
      stack.assign(1, id);
      while (!stack.empty()) {
        const ConceptId c = stack.back();
        stack.pop_back();
        for (ConceptId lo : lat.lower_neighbors(c)) {
          if (stamp[lo] == id) continue;
          stamp[lo] = id;
          below.push_back(lo);
          stack.push_back(lo);
        }
      }
    }

    auto& self = out[id];
    const std::size_t size = self.extent_size;
    double recurrence = 1.0;
    for (ConceptId d : below) {
      if (out[d].extent_size > size) throw ConsistencyError("subconcept with a larger extent");
      recurrence -= std::ldexp(out[d].sigma_recurrence,
                               static_cast<int>(out[d].extent_size) - static_cast<int>(size));
    }
    self.sigma_recurrence = recurrence;

    if (opts.exact_counts) {
      BigCount count = BigCount(1) << size;
      for (ConceptId d : below) count -= *out[d].generator_count;
      if (count <= 0)
        throw ConsistencyError("non-positive generator count at concept " + std::to_string(id) +
                               "; the lattice is not complete");
      self.sigma = ratio_to_double(count, size);
      self.generator_count = std::move(count);
    } else {
      self.sigma = recurrence;
    }
  }
  return StabilityReport(lat.token(), std::move(out));
}

bool verify_counting_identity(const StabilityReport& report, const FormalContext& ctx) {
  BigCount total = 0;
  for (const auto& s : report.per_concept()) {
    if (!s.generator_count) return false;
    total += *s.generator_count;
  }
  return total == (BigCount(1) << ctx.num_objects());
}

}  // namespace fca

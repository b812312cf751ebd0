#include "fca/lattice.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "fca/errors.hpp"

namespace fca {
namespace {

/// Close-by-One over attributes. One instance per worker.
class CloseByOne {
 public:
  CloseByOne(const FormalContext& ctx, std::atomic<std::size_t>& produced, std::size_t limit,
             std::atomic<bool>& stop)
      : ctx_(ctx), produced_(produced), limit_(limit), stop_(stop) {}

  void emit(ObjectSet extent, AttributeSet intent) {
    const std::size_t n = produced_.fetch_add(1) + 1;
    if (n > limit_) {
      stop_.store(true);
      throw CapacityError(limit_, n - 1);
    }
    out.push_back(Concept{0, std::move(extent), std::move(intent)});
  }

  /// Computes the child of (extent, intent) through attribute j. Returns
  /// false when the child is not canonical.
  bool child(const ObjectSet& extent, const AttributeSet& intent, std::size_t j, ObjectSet& c,
             AttributeSet& d) const {
    ObjectSet::intersect_into(extent, ctx_.column(j), c);
    d = ctx_.all_attributes();
    c.for_each([&](std::size_t g) { d &= ctx_.row(g); });
    return d.equal_below(intent, j);
  }

  void descend(const ObjectSet& extent, const AttributeSet& intent, std::size_t from) {
    if (stop_.load(std::memory_order_relaxed)) return;
    ObjectSet c;
    AttributeSet d;
    for (std::size_t j = from; j < ctx_.num_attributes(); ++j) {
      if (intent.contains(j)) continue;
      if (!child(extent, intent, j, c, d)) continue;
      emit(c, d);
      descend(c, d, j + 1);
    }
  }

  std::vector<Concept> out;

 private:
  const FormalContext& ctx_;
  std::atomic<std::size_t>& produced_;
  std::size_t limit_;
  std::atomic<bool>& stop_;
};

std::atomic<std::uint64_t> next_token{1};

}  // namespace

std::vector<Concept> enumerate_concepts(const FormalContext& ctx, const EnumerationOptions& opts) {
  std::atomic<std::size_t> produced{0};
  std::atomic<bool> stop{false};

  const ObjectSet top_extent = ctx.all_objects();
  const AttributeSet top_intent = ctx.derive_objects(top_extent);

  CloseByOne root(ctx, produced, opts.max_concepts, stop);
  root.emit(top_extent, top_intent);

  std::vector<std::size_t> branches;
  for (std::size_t j = 0; j < ctx.num_attributes(); ++j)
    if (!top_intent.contains(j)) branches.push_back(j);

  unsigned workers = opts.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : opts.threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(branches.size(), 1)));

  std::vector<std::vector<Concept>> parts(workers);
  std::atomic<std::size_t> next_branch{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&](unsigned w) {
    CloseByOne cbo(ctx, produced, opts.max_concepts, stop);
    try {
      ObjectSet c;
      AttributeSet d;
      for (std::size_t k = next_branch.fetch_add(1); k < branches.size() && !stop.load();
           k = next_branch.fetch_add(1)) {
        const std::size_t j = branches[k];
        if (!cbo.child(top_extent, top_intent, j, c, d)) continue;
        cbo.emit(c, d);
        cbo.descend(c, d, j + 1);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
    parts[w] = std::move(cbo.out);
  };

  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<Concept> all = std::move(root.out);
  for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(all));

  std::sort(all.begin(), all.end(),
            [](const Concept& a, const Concept& b) { return lectic_less(b.intent, a.intent); });
  for (std::size_t i = 0; i < all.size(); ++i) all[i].id = i;
  return all;
}

const Concept& ConceptLattice::concept_at(ConceptId id) const {
  if (id >= concepts_.size()) throw UnknownConceptError(id);
  return concepts_[id];
}

const std::vector<ConceptId>& ConceptLattice::upper_neighbors(ConceptId id) const {
  if (id >= upper_.size()) throw UnknownConceptError(id);
  return upper_[id];
}

const std::vector<ConceptId>& ConceptLattice::lower_neighbors(ConceptId id) const {
  if (id >= lower_.size()) throw UnknownConceptError(id);
  return lower_[id];
}

std::vector<std::pair<ConceptId, ConceptId>> ConceptLattice::edges() const {
  std::vector<std::pair<ConceptId, ConceptId>> out;
  out.reserve(num_edges_);
  for (ConceptId lo = 0; lo < upper_.size(); ++lo)
    for (ConceptId up : upper_[lo]) out.emplace_back(lo, up);
  return out;
}

bool ConceptLattice::leq(ConceptId lower, ConceptId upper) const {
  return concept_at(lower).extent.is_subset_of(concept_at(upper).extent);
}

ConceptLattice build_cover_graph(const FormalContext& ctx, std::vector<Concept> concepts) {
  const std::size_t n = concepts.size();
  if (n == 0) throw ConsistencyError("empty concept set");

  std::unordered_map<AttributeSet, ConceptId> by_intent;
  by_intent.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = concepts[i];
    if (c.id != i) throw ConsistencyError("concept ids must be 0..n-1 in order");
    if (!ctx.is_concept(c.extent, c.intent))
      throw ConsistencyError("concept " + std::to_string(i) + " is not a formal concept of the context");
    if (!by_intent.emplace(c.intent, i).second)
      throw ConsistencyError("duplicate intent at concept " + std::to_string(i));
  }

  ConceptLattice lat;
  lat.upper_.assign(n, {});
  lat.lower_.assign(n, {});

  ObjectSet candidate_extent;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [id, extent, intent] = concepts[i];
    AttributeSet minimal = ctx.all_attributes() - intent;
    const std::vector<std::size_t> outside = minimal.indices();
    for (std::size_t m : outside) {
      ObjectSet::intersect_into(extent, ctx.column(m), candidate_extent);
      AttributeSet candidate = ctx.all_attributes();
      candidate_extent.for_each([&](std::size_t g) { candidate &= ctx.row(g); });
      AttributeSet extra = candidate - intent;
      extra.erase(m);
      if (extra.intersects(minimal)) {
        minimal.erase(m);
        continue;
      }
      auto it = by_intent.find(candidate);
      if (it == by_intent.end())
        throw ConsistencyError("concept set is incomplete: lower neighbour of concept " +
                               std::to_string(i) + " is missing");
      lat.lower_[i].push_back(it->second);
      lat.upper_[it->second].push_back(i);
    }
  }

  std::size_t tops = 0, bottoms = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(lat.upper_[i].begin(), lat.upper_[i].end());
    std::sort(lat.lower_[i].begin(), lat.lower_[i].end());
    lat.num_edges_ += lat.upper_[i].size();
    if (lat.upper_[i].empty()) {
      ++tops;
      lat.top_ = i;
    }
    if (lat.lower_[i].empty()) {
      ++bottoms;
      lat.bottom_ = i;
    }
  }
  if (tops != 1 || bottoms != 1)
    throw ConsistencyError("lattice must have exactly one top and one bottom (found " +
                           std::to_string(tops) + " and " + std::to_string(bottoms) + ")");

  lat.concepts_ = std::move(concepts);
  lat.token_ = next_token.fetch_add(1);
  return lat;
}

ConceptLattice build_lattice(const FormalContext& ctx, const EnumerationOptions& opts) {
  return build_cover_graph(ctx, enumerate_concepts(ctx, opts));
}

std::vector<ConceptId> subconcepts_of(const ConceptLattice& lat, ConceptId id) {
  if (id >= lat.size()) throw UnknownConceptError(id);
  std::vector<char> seen(lat.size(), 0);
  std::vector<ConceptId> stack{id}, out;
  while (!stack.empty()) {
    const ConceptId c = stack.back();
    stack.pop_back();
    for (ConceptId lo : lat.lower_neighbors(c)) {
      if (seen[lo]) continue;
      seen[lo] = 1;
      out.push_back(lo);
      stack.push_back(lo);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fca

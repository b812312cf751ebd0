#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace fca {

struct ObjectTag {};
struct AttributeTag {};
struct ConceptTag {};

/// Fixed-universe bitmask over the indices [0, universe).
///
/// The tag keeps object sets and attribute sets from being mixed up at
/// compile time. Bits past `universe` in the last word are always zero, so
/// word-wise comparison and popcount are exact.
template <class Tag>
class IndexSet {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  IndexSet() = default;
  explicit IndexSet(std::size_t universe)
      : universe_(universe), words_((universe + kWordBits - 1) / kWordBits, 0) {}

  static IndexSet empty(std::size_t universe) { return IndexSet(universe); }

  static IndexSet full(std::size_t universe) {
    IndexSet s(universe);
    for (auto& w : s.words_) w = ~Word{0};
    s.trim();
    return s;
  }

  static IndexSet of(std::size_t universe, std::initializer_list<std::size_t> items) {
    IndexSet s(universe);
    for (auto i : items) s.insert(i);
    return s;
  }

  std::size_t universe() const noexcept { return universe_; }

  bool contains(std::size_t i) const {
    check(i);
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
  }

  void insert(std::size_t i) {
    check(i);
    words_[i / kWordBits] |= Word{1} << (i % kWordBits);
  }

  void erase(std::size_t i) {
    check(i);
    words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits));
  }

  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  bool none() const noexcept {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  IndexSet& operator&=(const IndexSet& o) {
    same_universe(o);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }

  IndexSet& operator|=(const IndexSet& o) {
    same_universe(o);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }

  /// Set difference.
  IndexSet& operator-=(const IndexSet& o) {
    same_universe(o);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    return *this;
  }

  friend IndexSet operator&(IndexSet a, const IndexSet& b) { return a &= b; }
  friend IndexSet operator|(IndexSet a, const IndexSet& b) { return a |= b; }
  friend IndexSet operator-(IndexSet a, const IndexSet& b) { return a -= b; }

  friend bool operator==(const IndexSet& a, const IndexSet& b) {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }

  /// Writes `a & b` into `out` without reallocating.
  static void intersect_into(const IndexSet& a, const IndexSet& b, IndexSet& out) {
    a.same_universe(b);
    out.universe_ = a.universe_;
    out.words_.resize(a.words_.size());
    for (std::size_t k = 0; k < a.words_.size(); ++k) out.words_[k] = a.words_[k] & b.words_[k];
  }

  bool is_subset_of(const IndexSet& o) const {
    same_universe(o);
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~o.words_[k]) return false;
    return true;
  }

  bool intersects(const IndexSet& o) const {
    same_universe(o);
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & o.words_[k]) return true;
    return false;
  }

  /// True when both sets agree on every index below `bound`.
  bool equal_below(const IndexSet& o, std::size_t bound) const {
    same_universe(o);
    const std::size_t full_words = bound / kWordBits;
    for (std::size_t k = 0; k < full_words; ++k)
      if (words_[k] != o.words_[k]) return false;
    const std::size_t rest = bound % kWordBits;
    if (rest == 0) return true;
    const Word mask = (Word{1} << rest) - 1;
    return ((words_[full_words] ^ o.words_[full_words]) & mask) == 0;
  }

  /// Lectic order: a < b iff the smallest index in the symmetric
  /// difference belongs to b.
  friend bool lectic_less(const IndexSet& a, const IndexSet& b) {
    a.same_universe(b);
    for (std::size_t k = 0; k < a.words_.size(); ++k) {
      const Word diff = a.words_[k] ^ b.words_[k];
      if (diff) return (b.words_[k] >> std::countr_zero(diff)) & 1U;
    }
    return false;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      Word w = words_[k];
      while (w) {
        f(k * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  std::size_t hash() const noexcept {
    std::uint64_t h = 1469598103934665603ULL ^ universe_;
    for (auto w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

 private:
  void check(std::size_t i) const {
    if (i >= universe_) throw std::out_of_range("index outside set universe");
  }
  void same_universe(const IndexSet& o) const {
    if (o.universe_ != universe_) throw std::invalid_argument("index sets over different universes");
  }
  void trim() {
    const std::size_t rest = universe_ % kWordBits;
    if (rest != 0 && !words_.empty()) words_.back() &= (Word{1} << rest) - 1;
  }

  std::size_t universe_ = 0;
  std::vector<Word> words_;
};

using ObjectSet = IndexSet<ObjectTag>;
using AttributeSet = IndexSet<AttributeTag>;
using ConceptSet = IndexSet<ConceptTag>;

}  // namespace fca

template <class Tag>
struct std::hash<fca::IndexSet<Tag>> {
  std::size_t operator()(const fca::IndexSet<Tag>& s) const noexcept { return s.hash(); }
};

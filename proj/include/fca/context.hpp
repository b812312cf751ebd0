#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "fca/index_set.hpp"

namespace fca {

/// A formal context (G, M, I): objects, attributes and a binary incidence
/// relation. Immutable once constructed.
///
/// The relation is stored twice, as object rows and as attribute columns, so
/// both derivation directions are a sequence of word-wise intersections.
/// Objects and attributes are identified by position; names are metadata and
/// must be unique within their list.
class FormalContext {
 public:
  FormalContext() = default;

  /// `rows[g]` is the attribute set of object g. Throws ParseError on
  /// duplicate names or dimension mismatch.
  FormalContext(std::vector<std::string> object_names, std::vector<std::string> attribute_names,
                std::vector<AttributeSet> rows);

  /// Builds from (object index, attribute index) incidence pairs.
  static FormalContext from_pairs(std::vector<std::string> object_names,
                                  std::vector<std::string> attribute_names,
                                  const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

  std::size_t num_objects() const noexcept { return object_names_.size(); }
  std::size_t num_attributes() const noexcept { return attribute_names_.size(); }

  const std::vector<std::string>& object_names() const noexcept { return object_names_; }
  const std::vector<std::string>& attribute_names() const noexcept { return attribute_names_; }

  bool incident(std::size_t g, std::size_t m) const { return rows_.at(g).contains(m); }
  const AttributeSet& row(std::size_t g) const { return rows_.at(g); }
  const ObjectSet& column(std::size_t m) const { return columns_.at(m); }

  ObjectSet all_objects() const { return ObjectSet::full(num_objects()); }
  AttributeSet all_attributes() const { return AttributeSet::full(num_attributes()); }
  ObjectSet no_objects() const { return ObjectSet::empty(num_objects()); }
  AttributeSet no_attributes() const { return AttributeSet::empty(num_attributes()); }

  /// A': attributes common to every object of `a`. The empty set maps to M.
  AttributeSet derive_objects(const ObjectSet& a) const;
  /// B': objects having every attribute of `b`. The empty set maps to G.
  ObjectSet derive_attributes(const AttributeSet& b) const;

  ObjectSet close_objects(const ObjectSet& a) const { return derive_attributes(derive_objects(a)); }
  AttributeSet close_attributes(const AttributeSet& b) const {
    return derive_objects(derive_attributes(b));
  }

  bool is_concept(const ObjectSet& a, const AttributeSet& b) const;

  friend bool operator==(const FormalContext& x, const FormalContext& y) {
    return x.object_names_ == y.object_names_ && x.attribute_names_ == y.attribute_names_ &&
           x.rows_ == y.rows_;
  }

 private:
  void check(const ObjectSet& a) const;
  void check(const AttributeSet& b) const;

  std::vector<std::string> object_names_;
  std::vector<std::string> attribute_names_;
  std::vector<AttributeSet> rows_;
  std::vector<ObjectSet> columns_;
};

// Burmeister CXT and 0/1 CSV interchange.

FormalContext read_cxt(std::istream& in);
FormalContext read_cxt_file(const std::string& path);
void write_cxt(std::ostream& out, const FormalContext& ctx);
std::string to_cxt(const FormalContext& ctx);

/// Header row of attribute names (first cell is ignored), then one row per
/// object: name followed by "1"/"0" cells.
FormalContext read_csv_context(std::istream& in);

/// Picks CXT or CSV by file extension (".csv" means CSV, anything else CXT).
FormalContext read_context_file(const std::string& path);

}  // namespace fca

#include "fca/context.hpp"

#include <unordered_set>

#include "fca/errors.hpp"

namespace fca {
namespace {

void require_unique(const std::vector<std::string>& names, const char* what) {
  std::unordered_set<std::string> seen;
  seen.reserve(names.size());
  for (const auto& n : names) {
    if (!seen.insert(n).second) throw ParseError(std::string("duplicate ") + what + " name '" + n + "'");
  }
}

}  // namespace

FormalContext::FormalContext(std::vector<std::string> object_names,
                             std::vector<std::string> attribute_names,
                             std::vector<AttributeSet> rows)
    : object_names_(std::move(object_names)),
      attribute_names_(std::move(attribute_names)),
      rows_(std::move(rows)) {
  require_unique(object_names_, "object");
  require_unique(attribute_names_, "attribute");
  if (rows_.size() != object_names_.size())
    throw ParseError("incidence has " + std::to_string(rows_.size()) + " rows for " +
                     std::to_string(object_names_.size()) + " objects");
  const std::size_t m = attribute_names_.size();
  columns_.assign(m, ObjectSet::empty(object_names_.size()));
  for (std::size_t g = 0; g < rows_.size(); ++g) {
    if (rows_[g].universe() != m)
      throw ParseError("incidence row " + std::to_string(g) + " has width " +
                       std::to_string(rows_[g].universe()) + ", expected " + std::to_string(m));
    rows_[g].for_each([&](std::size_t a) { columns_[a].insert(g); });
  }
}

FormalContext FormalContext::from_pairs(
    std::vector<std::string> object_names, std::vector<std::string> attribute_names,
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<AttributeSet> rows(object_names.size(), AttributeSet::empty(attribute_names.size()));
  for (auto [g, m] : pairs) {
    if (g >= rows.size() || m >= attribute_names.size())
      throw ParseError("incidence pair outside context dimensions");
    rows[g].insert(m);
  }
  return FormalContext(std::move(object_names), std::move(attribute_names), std::move(rows));
}

void FormalContext::check(const ObjectSet& a) const {
  if (a.universe() != num_objects()) throw std::out_of_range("object set does not belong to this context");
}

void FormalContext::check(const AttributeSet& b) const {
  if (b.universe() != num_attributes())
    throw std::out_of_range("attribute set does not belong to this context");
}

AttributeSet FormalContext::derive_objects(const ObjectSet& a) const {
  check(a);
  AttributeSet out = all_attributes();
  a.for_each([&](std::size_t g) { out &= rows_[g]; });
  return out;
}

ObjectSet FormalContext::derive_attributes(const AttributeSet& b) const {
  check(b);
  ObjectSet out = all_objects();
  b.for_each([&](std::size_t m) { out &= columns_[m]; });
  return out;
}

bool FormalContext::is_concept(const ObjectSet& a, const AttributeSet& b) const {
  return derive_objects(a) == b && derive_attributes(b) == a;
}

}  // namespace fca

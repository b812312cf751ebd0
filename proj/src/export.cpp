#include "fca/export.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <nlohmann/json.hpp>

namespace fca {
namespace {

using nlohmann::json;

template <class Set>
json names_of(const Set& set, const std::vector<std::string>& names) {
  json arr = json::array();
  set.for_each([&](std::size_t i) { arr.push_back(names[i]); });
  return arr;
}

json concept_object(const FormalContext& ctx, const Concept& c) {
  return json{{"id", c.id},
              {"extent", names_of(c.extent, ctx.object_names())},
              {"intent", names_of(c.intent, ctx.attribute_names())}};
}

json edge_array(const std::vector<std::pair<ConceptId, ConceptId>>& edges) {
  json arr = json::array();
  for (auto [lo, up] : edges) arr.push_back(json::array({lo, up}));
  return arr;
}

double round_significant(double value, int digits) {
  return std::strtod(format_significant(value, digits).c_str(), nullptr);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json criterion_object(const SelectionCriterion& c) {
  switch (c.kind) {
    case SelectionCriterion::Kind::Iceberg:
      return {{"kind", "iceberg"}, {"min_extent", c.count}};
    case SelectionCriterion::Kind::TopKExtent:
      return {{"kind", "top_k_extent"}, {"k", c.count}};
    case SelectionCriterion::Kind::TopKStability:
      return {{"kind", "top_k_stability"}, {"k", c.count}, {"exclude_extremes", c.exclude_extremes}};
    case SelectionCriterion::Kind::StabilityThreshold:
      return {{"kind", "stability_threshold"}, {"theta", round_significant(c.threshold, 12)}};
  }
  return {};
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

}  // namespace

std::string format_significant(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

std::string concepts_json(const FormalContext& ctx, const std::vector<Concept>& concepts) {
  json arr = json::array();
  for (const auto& c : concepts) arr.push_back(concept_object(ctx, c));
  return dump(arr);
}

std::string lattice_json(const FormalContext& ctx, const ConceptLattice& lat) {
  json concepts = json::array();
  for (const auto& c : lat.concepts()) concepts.push_back(concept_object(ctx, c));
  return dump(json{{"concepts", std::move(concepts)}, {"edges", edge_array(lat.edges())}});
}

std::string stability_json(const StabilityReport& report) {
  json arr = json::array();
  for (std::size_t id = 0; id < report.size(); ++id) {
    const auto& s = report.at(id);
    json entry{{"id", id}, {"extent_size", s.extent_size}, {"sigma", round_significant(s.sigma, 12)}};
    entry["generator_count"] = s.generator_count ? json(s.generator_count->str()) : json(nullptr);
    arr.push_back(std::move(entry));
  }
  return dump(arr);
}

std::string selection_json(const FormalContext& ctx, const ConceptLattice& lat, const SelectionResult& sel) {
  json concepts = json::array();
  for (ConceptId id : sel.selected_ids) concepts.push_back(concept_object(ctx, lat.concept_at(id)));
  return dump(json{{"criterion", criterion_object(sel.criterion)},
                   {"concepts", std::move(concepts)},
                   {"edges", edge_array(sel.induced_edges)}});
}

std::string selection_dot(const FormalContext& ctx, const ConceptLattice& lat, const StabilityReport& report,
                          const SelectionResult& sel) {
  std::ostringstream os;
  os << "digraph selection {\n"
     << "  rankdir=BT;\n"
     << "  node [shape=box];\n";
  for (ConceptId id : sel.selected_ids) {
    const auto& c = lat.concept_at(id);
    std::string intent;
    c.intent.for_each([&](std::size_t m) {
      if (!intent.empty()) intent += ", ";
      intent += ctx.attribute_names()[m];
    });
    if (intent.empty()) intent = "\xE2\x88\x85";  // ∅
    os << "  c" << id << " [label=\"" << dot_escape(intent) << " | " << c.extent.count()
       << " | \xCF\x83=" << format_significant(report.at(id).sigma, 4) << "\"];\n";
  }
  for (auto [lo, up] : sel.induced_edges) os << "  c" << lo << " -> c" << up << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace fca

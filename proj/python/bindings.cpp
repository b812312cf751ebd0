#include <sstream>

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fca/context.hpp"
#include "fca/errors.hpp"
#include "fca/export.hpp"
#include "fca/lattice.hpp"
#include "fca/selection.hpp"
#include "fca/stability.hpp"
#include "fca/usage.hpp"

namespace py = pybind11;

namespace {

template <class Set>
Set to_set(const std::vector<std::size_t>& items, std::size_t universe) {
  Set s(universe);
  for (auto i : items) {
    if (i >= universe) throw py::index_error("index " + std::to_string(i) + " out of range");
    s.insert(i);
  }
  return s;
}

py::object big_to_py(const fca::BigCount& n) {
  return py::module_::import("builtins").attr("int")(py::str(n.str()));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  using namespace fca;
  m.doc() = "Concept lattices, exact concept stability and taxonomy selection";

  auto error = py::register_exception<Error>(m, "FcaError");
  py::register_exception<ParseError>(m, "ParseError", error);
  py::register_exception<EmptyContextError>(m, "EmptyContextError", error);
  py::register_exception<CapacityError>(m, "CapacityError", error);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", error);
  py::register_exception<ExtentTooLargeError>(m, "ExtentTooLargeError", error);
  py::register_exception<UnknownConceptError>(m, "UnknownConceptError", error);
  py::register_exception<MismatchedLatticeError>(m, "MismatchedLatticeError", error);

  py::class_<FormalContext>(m, "FormalContext")
      .def(py::init([](std::vector<std::string> objects, std::vector<std::string> attributes,
                       const std::vector<std::vector<std::size_t>>& rows) {
             std::vector<AttributeSet> sets;
             for (const auto& r : rows) sets.push_back(to_set<AttributeSet>(r, attributes.size()));
             return FormalContext(std::move(objects), std::move(attributes), std::move(sets));
           }),
           py::arg("objects"), py::arg("attributes"), py::arg("rows"),
           "rows[g] lists the attribute indices of object g")
      .def_static("from_cxt", [](const std::string& text) {
        std::istringstream in(text);
        return read_cxt(in);
      })
      .def_static("from_csv", [](const std::string& text) {
        std::istringstream in(text);
        return read_csv_context(in);
      })
      .def_static("read", &read_context_file, py::arg("path"))
      .def("to_cxt", &to_cxt)
      .def_property_readonly("object_names", &FormalContext::object_names)
      .def_property_readonly("attribute_names", &FormalContext::attribute_names)
      .def_property_readonly("num_objects", &FormalContext::num_objects)
      .def_property_readonly("num_attributes", &FormalContext::num_attributes)
      .def("incident", &FormalContext::incident)
      .def("derive_objects",
           [](const FormalContext& c, const std::vector<std::size_t>& a) {
             return c.derive_objects(to_set<ObjectSet>(a, c.num_objects())).indices();
           })
      .def("derive_attributes",
           [](const FormalContext& c, const std::vector<std::size_t>& b) {
             return c.derive_attributes(to_set<AttributeSet>(b, c.num_attributes())).indices();
           })
      .def("close_objects",
           [](const FormalContext& c, const std::vector<std::size_t>& a) {
             return c.close_objects(to_set<ObjectSet>(a, c.num_objects())).indices();
           })
      .def("is_concept",
           [](const FormalContext& c, const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
             return c.is_concept(to_set<ObjectSet>(a, c.num_objects()), to_set<AttributeSet>(b, c.num_attributes()));
           })
      .def(py::self == py::self);

  py::class_<Concept>(m, "Concept")
      .def_readonly("id", &Concept::id)
      .def_property_readonly("extent", [](const Concept& c) { return c.extent.indices(); })
      .def_property_readonly("intent", [](const Concept& c) { return c.intent.indices(); })
      .def("__repr__", [](const Concept& c) {
        return "<Concept c" + std::to_string(c.id) + " |extent|=" + std::to_string(c.extent.count()) + ">";
      });

  m.def(
      "enumerate_concepts",
      [](const FormalContext& ctx, std::size_t max_concepts, unsigned threads) {
        return enumerate_concepts(ctx, {max_concepts, threads});
      },
      py::arg("ctx"), py::arg("max_concepts") = EnumerationOptions{}.max_concepts, py::arg("threads") = 1,
      py::call_guard<py::gil_scoped_release>());

  py::class_<ConceptLattice>(m, "ConceptLattice")
      .def_property_readonly("concepts", &ConceptLattice::concepts)
      .def("__len__", &ConceptLattice::size)
      .def_property_readonly("top", &ConceptLattice::top)
      .def_property_readonly("bottom", &ConceptLattice::bottom)
      .def("upper_neighbors", &ConceptLattice::upper_neighbors)
      .def("lower_neighbors", &ConceptLattice::lower_neighbors)
      .def("edges", &ConceptLattice::edges)
      .def("leq", &ConceptLattice::leq);

  m.def("build_cover_graph", &build_cover_graph, py::arg("ctx"), py::arg("concepts"));
  m.def(
      "build_lattice",
      [](const FormalContext& ctx, std::size_t max_concepts, unsigned threads) {
        return build_lattice(ctx, {max_concepts, threads});
      },
      py::arg("ctx"), py::arg("max_concepts") = EnumerationOptions{}.max_concepts, py::arg("threads") = 1,
      py::call_guard<py::gil_scoped_release>());
  m.def("subconcepts_of", &subconcepts_of, py::arg("lattice"), py::arg("id"));

  py::class_<StabilityReport>(m, "StabilityReport")
      .def("__len__", &StabilityReport::size)
      .def("sigma", [](const StabilityReport& r, ConceptId id) { return r.at(id).sigma; })
      .def("sigma_recurrence", [](const StabilityReport& r, ConceptId id) { return r.at(id).sigma_recurrence; })
      .def("extent_size", [](const StabilityReport& r, ConceptId id) { return r.at(id).extent_size; })
      .def("generator_count",
           [](const StabilityReport& r, ConceptId id) -> py::object {
             const auto& s = r.at(id);
             return s.generator_count ? big_to_py(*s.generator_count) : py::none();
           })
      .def_property_readonly("sigmas", [](const StabilityReport& r) {
        std::vector<double> v;
        for (const auto& s : r.per_concept()) v.push_back(s.sigma);
        return v;
      });

  m.def(
      "stability_all",
      [](const FormalContext& ctx, const ConceptLattice& lat, bool exact_counts) {
        StabilityOptions o;
        o.exact_counts = exact_counts;
        return stability_all(ctx, lat, o);
      },
      py::arg("ctx"), py::arg("lattice"), py::arg("exact_counts") = true);
  m.def(
      "stability_bruteforce",
      [](const FormalContext& ctx, const Concept& c, std::size_t max_extent) {
        auto r = stability_bruteforce(ctx, c, max_extent);
        return py::make_tuple(r.sigma, big_to_py(r.generator_count));
      },
      py::arg("ctx"), py::arg("concept"), py::arg("max_extent") = 20,
      "Returns (sigma, generator_count) by enumerating every subset of the extent");
  m.def("verify_counting_identity", &verify_counting_identity, py::arg("report"), py::arg("ctx"));

  py::class_<SelectionResult>(m, "SelectionResult")
      .def_readonly("selected_ids", &SelectionResult::selected_ids)
      .def_readonly("induced_edges", &SelectionResult::induced_edges)
      .def_property_readonly("criterion", [](const SelectionResult& s) { return s.criterion.name(); });

  py::class_<SelectionOverlap>(m, "SelectionOverlap")
      .def_readonly("jaccard", &SelectionOverlap::jaccard)
      .def_readonly("common", &SelectionOverlap::common);

  m.def("iceberg_filter", &iceberg_filter, py::arg("lattice"), py::arg("min_extent"));
  m.def("top_k_extent", &top_k_extent, py::arg("lattice"), py::arg("k"));
  m.def("top_k_stability", &top_k_stability, py::arg("lattice"), py::arg("report"), py::arg("k"),
        py::arg("exclude_extremes") = false);
  m.def("stability_threshold_filter", &stability_threshold_filter, py::arg("lattice"), py::arg("report"),
        py::arg("theta"));
  m.def("selection_overlap", &selection_overlap, py::arg("a"), py::arg("b"));

  py::enum_<LogKind>(m, "LogKind").value("EXTERNAL", LogKind::External).value("INTERNAL", LogKind::Internal);

  py::class_<UsageRecord>(m, "UsageRecord")
      .def(py::init<>())
      .def_readwrite("user_id", &UsageRecord::user_id)
      .def_readwrite("site_or_page", &UsageRecord::site_or_page)
      .def_readwrite("site", &UsageRecord::site)
      .def_readwrite("first_visit", &UsageRecord::first_visit)
      .def_readwrite("last_visit", &UsageRecord::last_visit)
      .def_readwrite("sessions", &UsageRecord::sessions);

  py::class_<MergeRule>(m, "MergeRule")
      .def(py::init<std::string, std::string>(), py::arg("prefix"), py::arg("merged_name"))
      .def_readwrite("prefix", &MergeRule::prefix)
      .def_readwrite("merged_name", &MergeRule::merged_name);

  py::class_<IngestConfig>(m, "IngestConfig")
      .def(py::init<>())
      .def_readwrite("min_sessions", &IngestConfig::min_sessions)
      .def_readwrite("window_start", &IngestConfig::window_start)
      .def_readwrite("window_end", &IngestConfig::window_end)
      .def_readwrite("merge_map", &IngestConfig::merge_map)
      .def_readwrite("site_filter", &IngestConfig::site_filter);

  m.def(
      "parse_usage_log",
      [](const std::string& text, LogKind kind) {
        std::istringstream in(text);
        auto log = parse_usage_log(in, kind);
        py::list rejects;
        for (const auto& r : log.rejects) rejects.append(py::make_tuple(r.line, r.text, r.reason));
        return py::make_tuple(log.records, rejects);
      },
      py::arg("text"), py::arg("kind") = LogKind::External, "Returns (records, rejects)");
  m.def("apply_merge_map", &apply_merge_map, py::arg("records"), py::arg("merge_map"));
  m.def("build_context", &build_context, py::arg("records"), py::arg("config"));

  m.def("lattice_json", &lattice_json);
  m.def("stability_json", &stability_json);
  m.def("selection_json", &selection_json);
  m.def("selection_dot", &selection_dot);
}

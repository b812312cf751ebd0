#include "fca/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fca/context.hpp"
#include "fca/errors.hpp"
#include "fca/export.hpp"
#include "fca/lattice.hpp"
#include "fca/selection.hpp"
#include "fca/stability.hpp"
#include "fca/usage.hpp"

namespace fca::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct GlobalOptions {
  unsigned threads = 0;
  std::size_t max_concepts = EnumerationOptions{}.max_concepts;
  std::optional<std::uint64_t> seed;  // reserved for sampling; unused

  EnumerationOptions enumeration() const {
    EnumerationOptions o;
    o.max_concepts = max_concepts;
    o.threads = threads;
    return o;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw ParseError("write failed for '" + path + "'");
}

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// Collects what goes into a run manifest.
class Manifest {
 public:
  Manifest(std::string command, const std::vector<std::string>& argv, const GlobalOptions& g)
      : started_(Clock::now()), last_(started_) {
    doc_["tool"] = "fca";
    doc_["version"] = kToolVersion;
    doc_["command"] = std::move(command);
    doc_["argv"] = argv;
    doc_["config"]["threads"] = g.threads;
    doc_["config"]["max_concepts"] = g.max_concepts;
    doc_["config"]["seed"] = g.seed ? json(*g.seed) : json(nullptr);
    doc_["inputs"] = json::array();
    doc_["outputs"] = json::array();
    doc_["wall_time_ms"] = json::object();
  }

  void input(const std::string& path, const std::string& bytes) {
    doc_["inputs"].push_back({{"path", path}, {"bytes", bytes.size()}, {"fnv1a64", fnv1a64(bytes)}});
  }
  void output(const std::string& path) { doc_["outputs"].push_back(path); }
  json& config() { return doc_["config"]; }
  void set(const std::string& key, json value) { doc_[key] = std::move(value); }

  /// Records the time since the previous stage boundary.
  void stage(const std::string& name) {
    const auto now = Clock::now();
    doc_["wall_time_ms"][name] = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
  }

  void write_next_to(const std::string& output_path) {
    doc_["wall_time_ms"]["total"] = std::chrono::duration<double, std::milli>(Clock::now() - started_).count();
    write_file(output_path + ".manifest.json", doc_.dump(2) + "\n");
  }

 private:
  using Clock = std::chrono::steady_clock;
  json doc_;
  Clock::time_point started_, last_;
};

FormalContext load_context(const std::string& path, Manifest& manifest) {
  const std::string bytes = read_file(path);
  manifest.input(path, bytes);
  std::istringstream in(bytes);
  const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  return csv ? read_csv_context(in) : read_cxt(in);
}

struct LoadedConfig {
  IngestConfig ingest;
  LogKind kind = LogKind::External;
  json snapshot;
};

LoadedConfig load_ingest_config(const std::string& path, Manifest& manifest) {
  const std::string bytes = read_file(path);
  manifest.input(path, bytes);
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::exception& e) {
    throw ParseError("config '" + path + "': " + e.what());
  }
  if (!doc.is_object()) throw ParseError("config '" + path + "' must be a JSON object");

  static const std::vector<std::string> known{"kind", "min_sessions", "window_start", "window_end", "merge_map",
                                              "site_filter"};
  for (const auto& [key, value] : doc.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ParseError("config '" + path + "': unknown key '" + key + "'");

  LoadedConfig cfg;
  cfg.snapshot = doc;
  const fs::path base = fs::path(path).parent_path();
  try {
    const std::string kind = doc.value("kind", "external");
    if (kind == "external")
      cfg.kind = LogKind::External;
    else if (kind == "internal")
      cfg.kind = LogKind::Internal;
    else
      throw ParseError("config '" + path + "': kind must be 'external' or 'internal'");
    if (doc.contains("min_sessions")) cfg.ingest.min_sessions = doc.at("min_sessions").get<std::uint64_t>();
    if (doc.contains("window_start")) cfg.ingest.window_start = doc.at("window_start").get<std::int64_t>();
    if (doc.contains("window_end")) cfg.ingest.window_end = doc.at("window_end").get<std::int64_t>();
    if (doc.contains("merge_map")) {
      const std::string p = (base / doc.at("merge_map").get<std::string>()).string();
      const std::string text = read_file(p);
      manifest.input(p, text);
      std::istringstream in(text);
      cfg.ingest.merge_map = read_merge_map(in);
    }
    if (doc.contains("site_filter")) {
      const std::string p = (base / doc.at("site_filter").get<std::string>()).string();
      const std::string text = read_file(p);
      manifest.input(p, text);
      std::istringstream in(text);
      cfg.ingest.site_filter = read_site_allowlist(in);
    }
  } catch (const json::exception& e) {
    throw ParseError("config '" + path + "': " + e.what());
  }
  cfg.ingest.validate();
  return cfg;
}

std::string concept_label(ConceptId id) { return "c" + std::to_string(id); }

std::string id_list(const std::vector<ConceptId>& ids) {
  std::string s;
  for (ConceptId id : ids) s += (s.empty() ? "" : " ") + concept_label(id);
  return s.empty() ? "-" : s;
}

int cmd_build_context(const std::string& log_path, const std::string& cfg_path, const std::string& out_path,
                      const std::vector<std::string>& argv, const GlobalOptions& g, std::ostream& out,
                      std::ostream& err) {
  Manifest manifest("build-context", argv, g);
  const LoadedConfig cfg = load_ingest_config(cfg_path, manifest);
  manifest.config()["ingest"] = cfg.snapshot;

  const std::string bytes = read_file(log_path);
  manifest.input(log_path, bytes);
  std::istringstream in(bytes);
  const ParsedLog log = parse_usage_log(in, cfg.kind);
  for (const auto& r : log.rejects)
    err << "warning: " << log_path << ":" << r.line << ": rejected row (" << r.reason << ")\n";
  manifest.set("rejected_rows", log.rejects.size());
  manifest.stage("parse");

  const FormalContext ctx = build_context(log.records, cfg.ingest);
  manifest.stage("build");
  write_file(out_path, to_cxt(ctx));
  manifest.output(out_path);
  manifest.set("objects", ctx.num_objects());
  manifest.set("attributes", ctx.num_attributes());
  manifest.write_next_to(out_path);
  out << "context: " << ctx.num_objects() << " objects x " << ctx.num_attributes() << " attributes\n";
  return kOk;
}

int cmd_lattice(const std::string& cxt_path, const std::string& out_path, const std::vector<std::string>& argv,
                const GlobalOptions& g, std::ostream& out) {
  Manifest manifest("lattice", argv, g);
  const FormalContext ctx = load_context(cxt_path, manifest);
  manifest.stage("read");
  const ConceptLattice lat = build_lattice(ctx, g.enumeration());
  manifest.stage("lattice");
  write_file(out_path, lattice_json(ctx, lat));
  manifest.output(out_path);
  manifest.set("concept_count", lat.size());
  manifest.write_next_to(out_path);
  out << "concepts: " << lat.size() << "\nedges: " << lat.num_edges() << "\n";
  return kOk;
}

int cmd_stability(const std::string& cxt_path, const std::string& out_path, const std::vector<std::string>& argv,
                  const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  Manifest manifest("stability", argv, g);
  const FormalContext ctx = load_context(cxt_path, manifest);
  manifest.stage("read");
  const ConceptLattice lat = build_lattice(ctx, g.enumeration());
  manifest.stage("lattice");
  const StabilityReport report = stability_all(ctx, lat);
  manifest.stage("stability");
  if (!verify_counting_identity(report, ctx)) {
    err << "error: generator counts do not sum to 2^" << ctx.num_objects() << "\n";
    return kConsistencyFailure;
  }
  write_file(out_path, stability_json(report));
  manifest.output(out_path);
  manifest.set("concept_count", lat.size());
  manifest.write_next_to(out_path);
  out << "concepts: " << lat.size() << "\ncounting identity: sum of generator counts = 2^" << ctx.num_objects()
      << "\n";
  return kOk;
}

struct SelectArgs {
  std::optional<std::size_t> iceberg, top_extent, top_stability;
  std::optional<double> stability_gt;
  bool exclude_extremes = true;
  std::string dot_path, json_path;
};

int cmd_select(const std::string& cxt_path, const SelectArgs& a, const std::vector<std::string>& argv,
               const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  const int chosen = int(a.iceberg.has_value()) + int(a.top_extent.has_value()) +
                     int(a.top_stability.has_value()) + int(a.stability_gt.has_value());
  if (chosen != 1) {
    err << "error: select needs exactly one of --iceberg, --top-extent, --top-stability, --stability-gt\n";
    return kUsageError;
  }
  if (a.stability_gt && !(*a.stability_gt >= 0.0 && *a.stability_gt <= 1.0)) {
    err << "error: --stability-gt must lie in [0, 1]\n";
    return kUsageError;
  }

  Manifest manifest("select", argv, g);
  const FormalContext ctx = load_context(cxt_path, manifest);
  manifest.stage("read");
  const ConceptLattice lat = build_lattice(ctx, g.enumeration());
  manifest.stage("lattice");
  const StabilityReport report = stability_all(ctx, lat);
  manifest.stage("stability");

  SelectionResult sel;
  if (a.iceberg)
    sel = iceberg_filter(lat, *a.iceberg);
  else if (a.top_extent)
    sel = top_k_extent(lat, *a.top_extent);
  else if (a.top_stability)
    sel = top_k_stability(lat, report, *a.top_stability, a.exclude_extremes);
  else
    sel = stability_threshold_filter(lat, report, *a.stability_gt);
  manifest.stage("select");

  write_file(a.dot_path, selection_dot(ctx, lat, report, sel));
  write_file(a.json_path, selection_json(ctx, lat, sel));
  manifest.output(a.dot_path);
  manifest.output(a.json_path);
  manifest.set("concept_count", lat.size());
  manifest.set("selection_criterion", sel.criterion.name());
  manifest.write_next_to(a.json_path);

  if (sel.selected_ids.empty()) err << "warning: " << sel.criterion.name() << " selected no concepts\n";
  out << sel.criterion.name() << ": " << sel.selected_ids.size() << " concepts, " << sel.induced_edges.size()
      << " edges\n";
  return kOk;
}

int cmd_compare(const std::string& cxt_path, std::size_t k, bool exclude_extremes,
                const std::vector<std::string>& argv, const GlobalOptions& g, std::ostream& out) {
  Manifest manifest("compare", argv, g);
  const FormalContext ctx = load_context(cxt_path, manifest);
  const ConceptLattice lat = build_lattice(ctx, g.enumeration());
  const StabilityReport report = stability_all(ctx, lat);

  const SelectionResult by_extent = top_k_extent(lat, k);
  const SelectionResult by_stability = top_k_stability(lat, report, k, exclude_extremes);
  const SelectionOverlap overlap = selection_overlap(by_extent, by_stability);

  auto sorted = [](std::vector<ConceptId> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  const auto e = sorted(by_extent.selected_ids), s = sorted(by_stability.selected_ids);
  std::vector<ConceptId> only_e, only_s;
  std::set_difference(e.begin(), e.end(), s.begin(), s.end(), std::back_inserter(only_e));
  std::set_difference(s.begin(), s.end(), e.begin(), e.end(), std::back_inserter(only_s));

  out << by_extent.criterion.name() << ": " << id_list(by_extent.selected_ids) << "\n"
      << by_stability.criterion.name() << ": " << id_list(by_stability.selected_ids) << "\n"
      << "jaccard: " << format_significant(overlap.jaccard, 12) << "\n"
      << "common: " << id_list(overlap.common) << "\n"
      << "only_top_extent: " << id_list(only_e) << "\n"
      << "only_top_stability: " << id_list(only_s) << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Concept lattices, stability indices and user taxonomies from usage logs", "fca"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kToolVersion);

  GlobalOptions g;
  app.add_option("--threads", g.threads, "Worker threads for enumeration (0 = all cores)")->capture_default_str();
  app.add_option("--max-concepts", g.max_concepts, "Hard limit on the number of concepts")->capture_default_str();
  app.add_option("--seed", g.seed, "Reserved for future sampling modes; currently unused");

  std::string p1, p2, p3;

  auto* build = app.add_subcommand("build-context", "Turn a usage log into a CXT context");
  build->add_option("log", p1, "Usage log CSV")->required();
  build->add_option("config", p2, "Ingest config JSON")->required();
  build->add_option("out", p3, "Output CXT path")->required();

  auto* lattice = app.add_subcommand("lattice", "Enumerate concepts and cover edges to JSON");
  lattice->add_option("context", p1, "Context file (CXT, or CSV by extension)")->required();
  lattice->add_option("out", p2, "Output JSON path")->required();

  auto* stability = app.add_subcommand("stability", "Exact stability index of every concept to JSON");
  stability->add_option("context", p1, "Context file (CXT, or CSV by extension)")->required();
  stability->add_option("out", p2, "Output JSON path")->required();

  SelectArgs sel;
  auto* select = app.add_subcommand("select", "Select a taxonomy and export it as DOT and JSON");
  select->add_option("context", p1, "Context file (CXT, or CSV by extension)")->required();
  select->add_option("dot", sel.dot_path, "Output DOT path")->required();
  select->add_option("json", sel.json_path, "Output JSON path")->required();
  select->add_option("--iceberg", sel.iceberg, "Concepts with extent size >= N");
  select->add_option("--top-extent", sel.top_extent, "K concepts with largest extents");
  select->add_option("--top-stability", sel.top_stability, "K most stable concepts");
  select->add_option("--stability-gt", sel.stability_gt, "Concepts with stability > THETA");
  select->add_flag("--exclude-extremes,!--include-extremes", sel.exclude_extremes,
                   "Skip an empty-extent bottom and empty-intent top in --top-stability (default: on)");

  std::size_t k = 0;
  bool compare_exclude = false;
  auto* compare = app.add_subcommand("compare", "Overlap of top-k by extent and top-k by stability");
  compare->add_option("context", p1, "Context file (CXT, or CSV by extension)")->required();
  compare->add_option("k", k, "Selection size")->required()->check(CLI::PositiveNumber);
  compare->add_flag("--exclude-extremes,!--include-extremes", compare_exclude,
                    "Skip an empty-extent bottom and empty-intent top in the stability ranking (default: off)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    if (*build) return cmd_build_context(p1, p2, p3, args, g, out, err);
    if (*lattice) return cmd_lattice(p1, p2, args, g, out);
    if (*stability) return cmd_stability(p1, p2, args, g, out, err);
    if (*select) return cmd_select(p1, sel, args, g, out, err);
    if (*compare) return cmd_compare(p1, k, compare_exclude, args, g, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const EmptyContextError& e) {
    err << "error: " << e.what() << "\n";
    return kEmptyResult;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kCapacityExceeded;
  } catch (const ConsistencyError& e) {
    err << "error: internal consistency failure: " << e.what() << "\n";
    return kConsistencyFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace fca::cli

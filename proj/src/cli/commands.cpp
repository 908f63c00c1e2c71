#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "confront/cli.hpp"
#include "confront/community.hpp"
#include "confront/csv.hpp"
#include "confront/error.hpp"
#include "confront/extract.hpp"
#include "confront/graph_io.hpp"
#include "confront/metrics.hpp"
#include "confront/normalize.hpp"
#include "confront/parallel.hpp"
#include "confront/sweep.hpp"

namespace fs = std::filesystem;

namespace confront::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Inputs {
  std::string objects;
  std::string relations;
  std::string segments;

  bool given() const { return !objects.empty() || !relations.empty(); }
};

void add_input_options(CLI::App* app, Inputs& in, bool required) {
  auto* o = app->add_option("--objects", in.objects, "Objects file (.csv or .json)");
  auto* r = app->add_option("--relations", in.relations, "Relations file (.csv or .json)");
  app->add_option("--segments", in.segments, "Segments CSV for splittable objects");
  if (required) {
    o->required();
    r->required();
  }
}

Database load_inputs(const Inputs& in) {
  if (in.objects.empty() || in.relations.empty()) {
    throw UsageError("--objects and --relations are both required");
  }
  std::optional<fs::path> segments;
  if (!in.segments.empty()) segments = in.segments;
  return load_database(in.objects, in.relations, segments);
}

void record_inputs(RunManifest& m, const Inputs& in) {
  auto add = [&](const char* role, const std::string& path) {
    if (!path.empty()) m.inputs.push_back({role, path, sha256_file(path)});
  };
  add("objects", in.objects);
  add("relations", in.relations);
  add("segments", in.segments);
}

ExtractionMethod resolve_method(const std::string& code, const std::optional<std::size_t>& k,
                                std::size_t threshold) {
  auto method = parse_method_code(code);
  if (!method) throw UsageError("unknown method '" + code + "'");
  if (method->scope == Scope::TopK) {
    if (!k) throw UsageError("method " + code + " needs --k");
    method->k = *k;
  }
  method->component_threshold = threshold;
  return *method;
}

std::string manifest_line(const std::string& hash) { return "# manifest: " + hash + "\n"; }

void write_text(const fs::path& path, const std::string& content) {
  write_atomically(path, [&](std::ostream& out) { out << content; });
}

void write_manifest(const fs::path& dir, RunManifest& m) {
  m.timestamp = current_timestamp();
  write_text(dir / "manifest.json", m.to_json());
}

constexpr const char* kSummaryColumns = "n,m,delta,properties,coverage,components,d_max,d_harm,rho_d";

std::string summary_cells(const GraphSummary& s) {
  std::ostringstream row;
  row << s.n << ',' << s.m << ',' << format_double(s.delta) << ',' << s.property_count << ','
      << format_double(s.property_coverage) << ',' << s.components << ',' << s.d_max << ','
      << format_double(s.d_harm) << ',' << (s.rho_d ? format_double(*s.rho_d) : "NA");
  return row.str();
}

std::string profile_csv(const DistanceProfile& profile, const std::string& hash) {
  std::ostringstream out;
  out << manifest_line(hash) << "hops,count,mean,stddev\n";
  for (const auto& b : profile.buckets) {
    out << (b.hops ? std::to_string(*b.hops) : "inf") << ',' << b.count << ',' << format_double(b.mean)
        << ',' << format_double(b.stddev) << '\n';
  }
  return out.str();
}

/// Runs body for each index in parallel and rethrows the failure of the
/// lowest index, so the reported error does not depend on scheduling.
void for_each_ordered(std::size_t n, const std::function<void(std::size_t)>& body) {
  std::vector<std::exception_ptr> failures(n);
  parallel_for(n, [&](std::size_t i) {
    try {
      body(i);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  });
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
}

struct Labeled {
  std::string label;
  ConfrontGraph graph;
  std::size_t baseline = 0;
};

// ---------------------------------------------------------------------------

struct ExtractArgs {
  Inputs inputs;
  std::vector<std::string> methods;
  bool all = false;
  std::optional<std::size_t> k;
  std::size_t threshold = kDefaultComponentThreshold;
  std::string out;
  std::string format = "graphml";
};

int cmd_extract(const ExtractArgs& a, std::ostream& out) {
  std::vector<std::string> codes = a.methods;
  if (a.all) codes.assign(kMethodCodes.begin(), kMethodCodes.end());
  if (codes.empty()) throw UsageError("give --method or --all");
  std::vector<ExtractionMethod> methods;
  for (const auto& code : codes) methods.push_back(resolve_method(code, a.k, a.threshold));

  RunManifest manifest;
  manifest.command = "extract";
  manifest.methods = codes;
  manifest.k = a.k;
  manifest.threshold = a.threshold;
  for (const auto& code : codes) {
    manifest.outputs.push_back(code + "." + a.format);
    manifest.outputs.push_back(code + ".cgb");
  }
  if (a.all) manifest.outputs.push_back("stats.csv");
  record_inputs(manifest, a.inputs);
  const std::string hash = manifest.hash();

  const Database db = load_inputs(a.inputs);
  std::vector<std::optional<ConfrontGraph>> graphs(methods.size());
  for_each_ordered(methods.size(), [&](std::size_t i) { graphs[i] = extract(db, methods[i]); });

  const fs::path dir = a.out;
  const GraphFileMeta meta{db.property_baseline(), hash};
  for_each_ordered(methods.size(), [&](std::size_t i) {
    const ConfrontGraph& g = *graphs[i];
    write_atomically(dir / (codes[i] + "." + a.format), [&](std::ostream& o) {
      if (a.format == "gexf") {
        write_gexf(o, g, meta);
      } else {
        write_graphml(o, g, meta);
      }
    });
    write_atomically(dir / (codes[i] + ".cgb"), [&](std::ostream& o) { write_graph_cache(o, g, meta); });
  });

  if (a.all) {
    std::vector<GraphSummary> rows(methods.size() + 1);
    const ConfrontGraph full = full_graph(db);
    rows[0] = summarize(full, db.property_baseline());
    for (std::size_t i = 0; i < methods.size(); ++i) rows[i + 1] = summarize(*graphs[i], db.property_baseline());
    std::ostringstream csv;
    csv << manifest_line(hash) << "method," << kSummaryColumns << '\n';
    csv << "Full," << summary_cells(rows[0]) << '\n';
    for (std::size_t i = 0; i < methods.size(); ++i) csv << codes[i] << ',' << summary_cells(rows[i + 1]) << '\n';
    write_text(dir / "stats.csv", csv.str());
  }
  write_manifest(dir, manifest);
  for (std::size_t i = 0; i < methods.size(); ++i) {
    out << codes[i] << ": n=" << graphs[i]->order() << " m=" << graphs[i]->size() << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct StatsArgs {
  Inputs inputs;
  std::vector<std::string> graphs;
  std::vector<std::string> methods;
  bool all = false;
  std::optional<std::size_t> k;
  std::size_t threshold = kDefaultComponentThreshold;
  std::string out;
  std::string profile;
};

int cmd_stats(const StatsArgs& a, std::ostream& out, std::ostream& err) {
  RunManifest manifest;
  manifest.command = "stats";
  std::vector<Labeled> items;
  if (!a.graphs.empty()) {
    if (a.inputs.given() || a.all || !a.methods.empty()) {
      throw UsageError("--graph cannot be combined with inline extraction");
    }
    for (const auto& path : a.graphs) {
      auto [g, meta] = read_graph_cache(fs::path(path));
      std::string label = g.method() ? g.method()->code() : fs::path(path).stem().string();
      manifest.inputs.push_back({"graph", path, sha256_file(path)});
      manifest.methods.push_back(label);
      items.push_back({std::move(label), std::move(g), meta.property_baseline});
    }
  } else {
    std::vector<std::string> codes = a.methods;
    if (a.all) codes.assign(kMethodCodes.begin(), kMethodCodes.end());
    if (codes.empty()) throw UsageError("give --graph, --method or --all");
    std::vector<ExtractionMethod> methods;
    for (const auto& code : codes) methods.push_back(resolve_method(code, a.k, a.threshold));
    manifest.methods = codes;
    manifest.k = a.k;
    manifest.threshold = a.threshold;
    record_inputs(manifest, a.inputs);
    const Database db = load_inputs(a.inputs);
    std::vector<std::optional<ConfrontGraph>> graphs(methods.size());
    for_each_ordered(methods.size(), [&](std::size_t i) { graphs[i] = extract(db, methods[i]); });
    items.push_back({"Full", full_graph(db), db.property_baseline()});
    for (std::size_t i = 0; i < methods.size(); ++i) {
      items.push_back({codes[i], std::move(*graphs[i]), db.property_baseline()});
    }
  }
  if (!a.out.empty()) manifest.outputs.push_back("stats.csv");
  if (!a.profile.empty()) {
    for (const auto& item : items) manifest.outputs.push_back(item.label + "_profile.csv");
  }
  const std::string hash = manifest.hash();

  std::vector<GraphSummary> rows(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].graph.empty()) err << "warning: " << items[i].label << ": empty graph\n";
    rows[i] = summarize(items[i].graph, items[i].baseline);
  }
  std::ostringstream csv;
  csv << manifest_line(hash) << "method," << kSummaryColumns << '\n';
  for (std::size_t i = 0; i < items.size(); ++i) csv << items[i].label << ',' << summary_cells(rows[i]) << '\n';

  if (!a.profile.empty()) {
    for (const auto& item : items) {
      const fs::path path = fs::path(a.profile) / (item.label + "_profile.csv");
      DistanceProfile profile;
      try {
        profile = distance_profile(item.graph);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::InsufficientCoordinates) throw;
        err << "warning: " << item.label << ": " << e.what() << '\n';
      }
      write_text(path, profile_csv(profile, hash));
    }
  }
  if (a.out.empty()) {
    out << csv.str();
  } else {
    write_text(fs::path(a.out) / "stats.csv", csv.str());
    write_manifest(a.out, manifest);
  }
  if (!a.profile.empty() && a.profile != a.out) write_manifest(a.profile, manifest);
  return 0;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
  Inputs inputs;
  std::string base;
  std::string k_range;
  std::size_t threshold = kDefaultComponentThreshold;
  std::string out;
};

std::vector<std::size_t> parse_k_range(const std::string& text) {
  static const std::regex pattern(R"((\d+)\.\.(\d+))");
  std::smatch match;
  if (!std::regex_match(text, match, pattern)) {
    throw UsageError("invalid --k-range '" + text + "', expected A..B");
  }
  std::size_t lo = 0;
  std::size_t hi = 0;
  try {
    lo = std::stoull(match[1].str());
    hi = std::stoull(match[2].str());
  } catch (const std::out_of_range&) {
    throw UsageError("invalid --k-range '" + text + "': bound too large");
  }
  if (lo > hi) throw UsageError("invalid --k-range '" + text + "': lower bound exceeds upper bound");
  std::vector<std::size_t> ks;
  for (std::size_t k = lo; k <= hi; ++k) ks.push_back(k);
  return ks;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  auto base = parse_method_code(a.base + "_k");
  if (!base) throw UsageError("invalid --base '" + a.base + "'");
  base->component_threshold = a.threshold;
  std::optional<std::vector<std::size_t>> ks;
  if (!a.k_range.empty()) ks = parse_k_range(a.k_range);

  RunManifest manifest;
  manifest.command = "sweep";
  manifest.methods = {base->code()};
  manifest.threshold = a.threshold;
  if (!a.out.empty()) manifest.outputs.push_back("sweep.csv");
  record_inputs(manifest, a.inputs);
  const Database db = load_inputs(a.inputs);
  if (!ks) ks = default_k_range(db);
  // the resolved range is part of the provenance
  manifest.methods.push_back(std::to_string(ks->front()) + ".." + std::to_string(ks->back()));
  const std::string hash = manifest.hash();

  const auto points = sweep_k(db, *base, *ks);
  const auto front = pareto_front(points);
  const SweepPoint best = select_best(points);
  std::ostringstream csv;
  csv << manifest_line(hash) << "k,coverage,rho,n,m,components,d_harm,pareto\n";
  for (const auto& p : points) {
    const bool on_front = std::any_of(front.begin(), front.end(), [&](const SweepPoint& f) { return f.k == p.k; });
    csv << p.k << ',' << p.coverage << ',' << (std::isnan(p.rho) ? "NA" : format_double(p.rho)) << ','
        << p.summary.n << ',' << p.summary.m << ',' << p.summary.components << ','
        << format_double(p.summary.d_harm) << ',' << (on_front ? 1 : 0) << '\n';
  }
  if (a.out.empty()) {
    out << csv.str();
  } else {
    write_text(fs::path(a.out) / "sweep.csv", csv.str());
    write_manifest(a.out, manifest);
  }
  out << "selected k=" << best.k << " coverage=" << best.coverage
      << " rho=" << (std::isnan(best.rho) ? "NA" : format_double(best.rho)) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------

struct CommunitiesArgs {
  Inputs inputs;
  std::string graph;
  std::string method;
  std::optional<std::size_t> k;
  std::size_t threshold = kDefaultComponentThreshold;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_communities(const CommunitiesArgs& a, std::ostream& out) {
  RunManifest manifest;
  manifest.command = "communities";
  manifest.seed = a.seed;
  manifest.outputs = {"partition.csv",        "communities.csv",       "communities.gexf",
                      "composition_kinds.csv", "composition_parishes.csv", "composition_walls.csv"};
  std::optional<ConfrontGraph> graph;
  std::function<void()> load;
  if (!a.graph.empty()) {
    if (a.inputs.given() || !a.method.empty()) throw UsageError("--graph cannot be combined with inline extraction");
    manifest.inputs.push_back({"graph", a.graph, sha256_file(a.graph)});
    load = [&] { graph = read_graph_cache(fs::path(a.graph)).first; };
  } else {
    if (a.method.empty()) throw UsageError("give --graph or --method");
    const ExtractionMethod method = resolve_method(a.method, a.k, a.threshold);
    manifest.methods = {a.method};
    manifest.k = a.k;
    manifest.threshold = a.threshold;
    record_inputs(manifest, a.inputs);
    load = [&, method] { graph = extract(load_inputs(a.inputs), method); };
  }
  const std::string hash = manifest.hash();
  load();
  const ConfrontGraph& g = *graph;
  if (g.empty()) throw Error(ErrorCode::EmptyResult, "graph has no vertices");

  const CommunityPartition partition = louvain(g, a.seed);
  const auto stats = community_stats(g, partition);
  const CommunityNetwork net = community_network(g, partition);
  const fs::path dir = a.out;

  std::ostringstream part;
  part << manifest_line(hash) << "vertex_id,object_id,segment_id,community\n";
  for (std::size_t v = 0; v < g.order(); ++v) {
    const Vertex& vertex = g.vertices()[v];
    csv::write_row(part, {vertex.id, vertex.object_id, vertex.segment_id.value_or(""),
                          std::to_string(partition.assignment[v])});
  }
  write_text(dir / "partition.csv", part.str());

  std::ostringstream table;
  table << manifest_line(hash) << "community," << kSummaryColumns << '\n';
  for (const auto& s : stats) table << s.community << ',' << summary_cells(s.summary) << '\n';
  write_text(dir / "communities.csv", table.str());

  write_atomically(dir / "communities.gexf", [&](std::ostream& o) { write_community_gexf(o, net, hash); });

  std::ostringstream kinds;
  kinds << manifest_line(hash) << "community,size";
  for (std::size_t k = 0; k < kObjectKindCount; ++k) kinds << ',' << to_string(static_cast<ObjectKind>(k));
  kinds << '\n';
  std::ostringstream parishes;
  parishes << manifest_line(hash) << "community,parish,properties\n";
  std::ostringstream walls;
  walls << manifest_line(hash) << "community,inside,outside,unknown\n";
  for (const auto& node : net.nodes) {
    kinds << node.community << ',' << node.size;
    for (auto count : node.kinds) kinds << ',' << count;
    kinds << '\n';
    for (const auto& [parish, count] : node.parishes) {
      csv::write_row(parishes, {std::to_string(node.community), parish, std::to_string(count)});
    }
    walls << node.community << ',' << node.old_walls.inside << ',' << node.old_walls.outside << ','
          << node.old_walls.unknown << '\n';
  }
  write_text(dir / "composition_kinds.csv", kinds.str());
  write_text(dir / "composition_parishes.csv", parishes.str());
  write_text(dir / "composition_walls.csv", walls.str());
  write_manifest(dir, manifest);

  out << "communities=" << partition.community_count() << " modularity=" << format_double(partition.modularity)
      << " seed=" << a.seed << " size_gini=" << format_double(size_gini(partition)) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_dump_normalization(const std::string& path, std::ostream& out) {
  if (path.empty()) {
    dump_normalization_table(out);
  } else {
    write_atomically(path, [](std::ostream& o) { dump_normalization_table(o); });
  }
  return 0;
}

int cmd_validate(const Inputs& in, std::ostream& out, std::ostream& err) {
  const Database db = load_inputs(in);
  for (const auto& w : validate_database(db)) err << "warning: " << w.message << '\n';
  out << "objects=" << db.objects().size() << " relations=" << db.relations().size()
      << " property_baseline=" << db.property_baseline() << '\n';
  return 0;
}

void add_k_and_threshold(CLI::App* app, std::optional<std::size_t>& k, std::size_t& threshold) {
  app->add_option("--k", k, "Number of longest streets removed (W) or split (S) by _k methods");
  app->add_option("--threshold", threshold, "Minimum size of a kept connected component")
      ->check(CLI::PositiveNumber)
      ->default_val(kDefaultComponentThreshold);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extracts, measures and segments confront networks built from land-register relations.",
               std::string(kToolName)};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  ExtractArgs extract_args;
  auto* extract_cmd = app.add_subcommand("extract", "Extract graphs for one or all methods");
  add_input_options(extract_cmd, extract_args.inputs, true);
  auto* method_opt = extract_cmd->add_option("--method", extract_args.methods, "Method code, e.g. EFS_k (repeatable)");
  extract_cmd->add_flag("--all", extract_args.all, "Extract all sixteen methods and write stats.csv")
      ->excludes(method_opt);
  add_k_and_threshold(extract_cmd, extract_args.k, extract_args.threshold);
  extract_cmd->add_option("--out", extract_args.out, "Output directory")->required();
  extract_cmd->add_option("--format", extract_args.format, "Graph file format")
      ->check(CLI::IsMember({"graphml", "gexf"}))
      ->default_val("graphml");

  StatsArgs stats_args;
  auto* stats_cmd = app.add_subcommand("stats", "Topological and spatial statistics per method");
  add_input_options(stats_cmd, stats_args.inputs, false);
  stats_cmd->add_option("--graph", stats_args.graphs, "Graph cache file (.cgb) written by extract (repeatable)");
  auto* stats_method = stats_cmd->add_option("--method", stats_args.methods, "Method code to extract inline (repeatable)");
  stats_cmd->add_flag("--all", stats_args.all, "Extract all sixteen methods inline")->excludes(stats_method);
  add_k_and_threshold(stats_cmd, stats_args.k, stats_args.threshold);
  stats_cmd->add_option("--out", stats_args.out, "Output directory for stats.csv (stdout when omitted)");
  stats_cmd->add_option("--profile", stats_args.profile, "Directory for per-method distance profile CSVs");

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep k for a top-k method and pick the Pareto-best value");
  add_input_options(sweep_cmd, sweep_args.inputs, true);
  sweep_cmd->add_option("--base", sweep_args.base, "Method family")
      ->required()
      ->check(CLI::IsMember({"RFW", "EFW", "RFS", "EFS"}));
  sweep_cmd->add_option("--k-range", sweep_args.k_range,
                        "Inclusive range A..B (default 0..ceil(10% of the streets))");
  sweep_cmd->add_option("--threshold", sweep_args.threshold, "Minimum size of a kept connected component")
      ->check(CLI::PositiveNumber)
      ->default_val(kDefaultComponentThreshold);
  sweep_cmd->add_option("--out", sweep_args.out, "Output directory for sweep.csv (stdout when omitted)");

  CommunitiesArgs comm_args;
  auto* comm_cmd = app.add_subcommand("communities", "Louvain communities with per-community statistics");
  add_input_options(comm_cmd, comm_args.inputs, false);
  comm_cmd->add_option("--graph", comm_args.graph, "Graph cache file (.cgb) written by extract");
  comm_cmd->add_option("--method", comm_args.method, "Method code to extract inline");
  add_k_and_threshold(comm_cmd, comm_args.k, comm_args.threshold);
  comm_cmd->add_option("--seed", comm_args.seed, "Seed of the vertex visiting order")->default_val(0);
  comm_cmd->add_option("--out", comm_args.out, "Output directory")->required();

  std::string dump_path;
  auto* dump_cmd = app.add_subcommand("dump-normalization", "Print the relation normalization table as CSV");
  dump_cmd->add_option("--out", dump_path, "Output file (stdout when omitted)");

  Inputs validate_inputs;
  auto* validate_cmd = app.add_subcommand("validate", "Load a database and report warnings");
  add_input_options(validate_cmd, validate_inputs, true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (extract_cmd->parsed()) return cmd_extract(extract_args, out);
    if (stats_cmd->parsed()) return cmd_stats(stats_args, out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_args, out);
    if (comm_cmd->parsed()) return cmd_communities(comm_args, out);
    if (dump_cmd->parsed()) return cmd_dump_normalization(dump_path, out);
    if (validate_cmd->parsed()) return cmd_validate(validate_inputs, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace confront::cli

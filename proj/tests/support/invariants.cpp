#include "invariants.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "confront/error.hpp"
#include "confront/extract.hpp"
#include "confront/graph_io.hpp"

namespace invariants {

using namespace confront;

namespace {

std::string bytes(const ConfrontGraph& g) {
  std::ostringstream out;
  write_graphml(out, g, {});
  write_graph_cache(out, g, {});
  return out.str();
}

std::set<std::string> object_ids(const ConfrontGraph& g) {
  std::set<std::string> ids;
  for (const auto& v : g.vertices()) ids.insert(v.object_id);
  return ids;
}

// relation id -> number of edges carrying it, restricted to primary relations
std::map<std::string, std::size_t> primary_ids(const ConfrontGraph& g, const Database& db) {
  std::map<std::string, std::size_t> out;
  for (const auto& e : g.edges()) {
    for (const auto& rid : e.relation_ids) {
      const auto it = std::find_if(db.relations().begin(), db.relations().end(),
                                   [&](const RelationRecord& r) { return r.id == rid; });
      if (it != db.relations().end() && it->origin == Origin::Primary) ++out[rid];
    }
  }
  return out;
}

struct Run {
  std::optional<ConfrontGraph> graph;
  std::string failure;
};

Run run(const Database& db, const ExtractionMethod& m) {
  try {
    return {extract(db, m), {}};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::EmptyResult) return {std::nullopt, {}};
    return {std::nullopt, std::string(to_string(e.code())) + ": " + e.what()};
  }
}

}  // namespace

std::vector<std::string> check_graph(const ConfrontGraph& g, const ExtractionMethod& m) {
  std::vector<std::string> out;
  const std::string tag = m.code() + ": ";
  std::vector<std::size_t> incident(g.order(), 0);
  std::vector<std::size_t> artificial(g.order(), 0);
  std::map<std::string, std::size_t> carriers;
  for (const auto& e : g.edges()) {
    if (!m.keep_hierarchy && hierarchy_class(e.type) == HierarchyClass::Hierarchical) {
      out.push_back(tag + "hierarchical edge in an F graph");
    }
    if (!m.use_additional && e.origin == EdgeOrigin::Additional) {
      out.push_back(tag + "additional edge in an R graph");
    }
    if (!m.split && e.origin == EdgeOrigin::Artificial) out.push_back(tag + "artificial edge in a W graph");
    ++incident[e.source];
    ++incident[e.target];
    if (e.origin == EdgeOrigin::Artificial) {
      ++artificial[e.source];
      ++artificial[e.target];
    }
    for (const auto& rid : e.relation_ids) ++carriers[rid];
  }
  for (const auto& [rid, count] : carriers) {
    if (count != 1) out.push_back(tag + "relation " + rid + " carried by " + std::to_string(count) + " edges");
  }
  for (std::size_t v = 0; v < g.order(); ++v) {
    const auto& vertex = g.vertices()[v];
    if (vertex.segment_id && incident[v] == 1 && artificial[v] == 1) {
      out.push_back(tag + "segment leaf " + vertex.id + " survived pruning");
    }
    if (!m.split && vertex.segment_id) out.push_back(tag + "segment vertex in a W graph");
  }
  std::size_t count = 0;
  const auto label = connected_components(UndirectedView(g), &count);
  std::vector<std::size_t> sizes(count, 0);
  for (auto l : label) ++sizes[l];
  for (auto s : sizes) {
    if (s < m.component_threshold) {
      out.push_back(tag + "component of " + std::to_string(s) + " below threshold " +
                    std::to_string(m.component_threshold));
    }
  }
  return out;
}

std::vector<std::string> check_database(const Database& db, std::uint64_t seed) {
  std::vector<std::string> out;
  std::mt19937_64 rng(seed);
  const std::size_t ranked = streets_by_length(db).size();

  for (auto code : kMethodCodes) {
    auto m = *parse_method_code(code);
    m.component_threshold = 1 + rng() % 5;
    if (m.scope == Scope::TopK) m.k = rng() % (ranked + 1);
    const Run first = run(db, m);
    if (!first.failure.empty()) {
      out.push_back(m.code() + ": " + first.failure);
      continue;
    }
    if (!first.graph) continue;
    for (auto& line : check_graph(*first.graph, m)) out.push_back(std::move(line));
    const Run again = run(db, m);
    if (!again.graph || bytes(*again.graph) != bytes(*first.graph)) {
      out.push_back(m.code() + ": rerun differs");
    }
  }

  // Splitting rebinds primary relations without losing or duplicating any.
  for (auto code : kMethodCodes) {
    auto split = *parse_method_code(code);
    if (!split.split) continue;
    split.component_threshold = 1;
    if (split.scope == Scope::TopK) split.k = std::min<std::size_t>(ranked, 2);
    // a split top-k street stands where the whole-vertex variant keeps every street
    auto whole = split;
    whole.split = false;
    if (whole.scope == Scope::TopK) whole.scope = Scope::StreetsOnly;
    const Run s = run(db, split);
    const Run w = run(db, whole);
    if (!s.failure.empty() || !w.failure.empty() || !s.graph || !w.graph) {
      out.push_back(split.code() + ": conservation run failed " + s.failure + w.failure);
      continue;
    }
    if (primary_ids(*s.graph, db) != primary_ids(*w.graph, db)) {
      out.push_back(split.code() + ": primary relations differ from " + whole.code());
    }
  }

  // Removing more of the longest streets never brings an object back.
  for (const char* code : {"RFW_k", "EFW_k"}) {
    auto m = *parse_method_code(code);
    m.component_threshold = 1;
    std::optional<std::set<std::string>> previous;
    for (std::size_t k = 0; k <= ranked; ++k) {
      m.k = k;
      const Run r = run(db, m);
      if (!r.failure.empty()) {
        out.push_back(m.code() + " k=" + std::to_string(k) + ": " + r.failure);
        break;
      }
      const auto ids = r.graph ? object_ids(*r.graph) : std::set<std::string>{};
      if (previous && !std::includes(previous->begin(), previous->end(), ids.begin(), ids.end())) {
        out.push_back(m.code() + ": objects at k=" + std::to_string(k) + " not a subset of k=" +
                      std::to_string(k - 1));
      }
      previous = ids;
    }
  }
  return out;
}

}  // namespace invariants

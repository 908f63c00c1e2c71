#include "confront/extract.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "confront/error.hpp"
#include "confront/normalize.hpp"

namespace confront {

namespace {

enum class Action { Keep, Remove, Split };

bool has_equality_relations(const Database& db) {
  return std::any_of(db.relations().begin(), db.relations().end(),
                     [](const RelationRecord& r) { return r.raw_type == kEqualityRawType; });
}

std::unordered_set<std::string> top_k_streets(const Database& db, std::size_t k) {
  if (k == 0) return {};
  const auto ranked = streets_by_length(db);
  if (k > ranked.size()) {
    std::size_t without = 0;
    for (const auto& o : db.objects()) {
      if (o.kind == ObjectKind::Street && !o.length_m) ++without;
    }
    throw Error(ErrorCode::MissingLength,
                "k=" + std::to_string(k) + " exceeds the " + std::to_string(ranked.size()) +
                    " streets with a length (" + std::to_string(without) + " streets lack length_m)");
  }
  return {ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k)};
}

Action split_or_fail(const SpatialObject& obj) {
  if (obj.segments.empty()) {
    throw Error(ErrorCode::MissingSegments, "object '" + obj.id + "' must be split but has no segments");
  }
  return Action::Split;
}

Action decide(const SpatialObject& obj, const ExtractionMethod& method,
              const std::unordered_set<std::string>& top_k) {
  const bool street = obj.kind == ObjectKind::Street;
  if (method.scope == Scope::TopK && street && top_k.contains(obj.id)) {
    return method.split ? split_or_fail(obj) : Action::Remove;
  }
  if (obj.is_punctual()) return Action::Keep;
  switch (method.scope) {
    case Scope::All:
      // objects without recorded pieces stay whole
      return method.split && !obj.segments.empty() ? Action::Split : Action::Keep;
    case Scope::StreetsOnly:
      if (!street) return Action::Remove;
      return method.split ? split_or_fail(obj) : Action::Keep;
    case Scope::TopK:
      return street ? Action::Keep : Action::Remove;
  }
  return Action::Keep;
}

// Prunes, round by round, segment vertices whose single incident edge is
// artificial.
ConfrontGraph prune_segment_leaves(ConfrontGraph g, std::size_t& pruned) {
  while (true) {
    std::vector<std::size_t> incident(g.order(), 0);
    std::vector<std::size_t> artificial(g.order(), 0);
    for (const auto& e : g.edges()) {
      ++incident[e.source];
      ++incident[e.target];
      if (e.origin == EdgeOrigin::Artificial) {
        ++artificial[e.source];
        ++artificial[e.target];
      }
    }
    std::vector<bool> keep(g.order(), true);
    bool any = false;
    for (std::size_t v = 0; v < g.order(); ++v) {
      if (g.vertices()[v].segment_id && incident[v] == 1 && artificial[v] == 1) {
        keep[v] = false;
        any = true;
        ++pruned;
      }
    }
    if (!any) return g;
    g = induced_subgraph(g, keep);
  }
}

}  // namespace

std::vector<std::string> streets_by_length(const Database& db) {
  std::vector<const SpatialObject*> streets;
  for (const auto& o : db.objects()) {
    if (o.kind == ObjectKind::Street && o.length_m) streets.push_back(&o);
  }
  std::sort(streets.begin(), streets.end(), [](const SpatialObject* a, const SpatialObject* b) {
    if (*a->length_m != *b->length_m) return *a->length_m > *b->length_m;
    return a->id < b->id;
  });
  std::vector<std::string> ids;
  ids.reserve(streets.size());
  for (const auto* s : streets) ids.push_back(s->id);
  return ids;
}

ConfrontGraph build_full_graph(const Database& db) {
  std::vector<std::size_t> vertex_of(db.objects().size(), static_cast<std::size_t>(-1));
  std::vector<bool> linked(db.objects().size(), false);
  for (const auto& r : db.relations()) {
    if (r.origin != Origin::Primary) continue;
    linked[*db.index_of(r.source_id)] = true;
    linked[*db.index_of(r.target_id)] = true;
  }
  std::vector<Vertex> vertices;
  for (std::size_t i = 0; i < db.objects().size(); ++i) {
    if (!linked[i]) continue;
    vertex_of[i] = vertices.size();
    vertices.push_back(make_object_vertex(db.objects()[i]));
  }
  std::vector<Edge> edges;
  for (const auto& r : db.relations()) {
    if (r.origin != Origin::Primary) continue;
    const std::size_t s = *db.index_of(r.source_id);
    const std::size_t t = *db.index_of(r.target_id);
    edges.push_back(Edge{vertex_of[s], vertex_of[t], normalize_relation_type(r.raw_type, db.objects()[t]),
                         EdgeOrigin::Primary, {r.id}});
  }
  return ConfrontGraph(std::move(vertices), std::move(edges));
}

ConfrontGraph filter_hierarchy(const ConfrontGraph& g) {
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (hierarchy_class(e.type) == HierarchyClass::Flat) edges.push_back(e);
  }
  return ConfrontGraph(g.vertices(), std::move(edges), g.method());
}

ConfrontGraph handle_nonpunctual(const ConfrontGraph& g, const Database& db,
                                 const ExtractionMethod& method, ExtractionReport* report) {
  ExtractionReport local;
  ExtractionReport& rep = report ? *report : local;
  const auto top_k = method.scope == Scope::TopK ? top_k_streets(db, method.k)
                                                 : std::unordered_set<std::string>{};

  constexpr auto kGone = static_cast<std::size_t>(-1);
  // old vertex -> first new vertex; split objects occupy a contiguous block
  std::vector<std::size_t> first_new(g.order(), kGone);
  std::vector<const SpatialObject*> split_object(g.order(), nullptr);
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < g.order(); ++v) {
    const Vertex& vertex = g.vertices()[v];
    const SpatialObject* obj = vertex.segment_id ? nullptr : db.find(vertex.object_id);
    const Action action = obj ? decide(*obj, method, top_k) : Action::Keep;
    if (action == Action::Remove) {
      ++rep.removed_objects;
      continue;
    }
    first_new[v] = vertices.size();
    if (action == Action::Keep) {
      vertices.push_back(vertex);
      continue;
    }
    ++rep.split_objects;
    split_object[v] = obj;
    for (std::size_t i = 0; i < obj->segments.size(); ++i) {
      if (i > 0) {
        edges.push_back(Edge{vertices.size() - 1, vertices.size(), NormalizedType::ArtificialAdjacency,
                             EdgeOrigin::Artificial, {}});
      }
      vertices.push_back(make_segment_vertex(*obj, obj->segments[i]));
    }
  }

  std::unordered_map<std::string_view, const RelationRecord*> relation_by_id;
  for (const auto& r : db.relations()) relation_by_id.emplace(r.id, &r);

  auto segment_slot = [&](std::size_t old, const std::optional<std::string>& hint) {
    const SpatialObject* obj = split_object[old];
    if (hint) {
      for (std::size_t i = 0; i < obj->segments.size(); ++i) {
        if (obj->segments[i].id == *hint) return first_new[old] + i;
      }
    }
    ++rep.default_bindings;
    return first_new[old];
  };

  for (const auto& e : g.edges()) {
    if (first_new[e.source] == kGone || first_new[e.target] == kGone) continue;
    const bool rebind = split_object[e.source] || split_object[e.target];
    if (!rebind || e.relation_ids.empty()) {
      Edge copy = e;
      copy.source = first_new[e.source];
      copy.target = first_new[e.target];
      edges.push_back(std::move(copy));
      continue;
    }
    // folded relations may name different pieces of the same target
    for (const auto& rid : e.relation_ids) {
      const RelationRecord* r = relation_by_id.at(rid);
      const std::size_t s =
          split_object[e.source] ? segment_slot(e.source, std::nullopt) : first_new[e.source];
      const std::size_t t =
          split_object[e.target] ? segment_slot(e.target, r->target_segment) : first_new[e.target];
      edges.push_back(Edge{s, t, e.type, e.origin, {rid}});
    }
  }

  ConfrontGraph out(std::move(vertices), std::move(edges), g.method());
  if (rep.split_objects == 0) return out;
  return prune_segment_leaves(std::move(out), rep.pruned_segments);
}

ConfrontGraph inject_additional(const ConfrontGraph& g, const Database& db, ExtractionReport* report) {
  ExtractionReport local;
  ExtractionReport& rep = report ? *report : local;

  auto resolve = [&](const std::string& object_id,
                     const std::optional<std::string>& hint) -> std::optional<std::size_t> {
    if (auto v = g.find_vertex(object_id)) return v;
    const SpatialObject* obj = db.find(object_id);
    if (obj == nullptr || obj->segments.empty()) return std::nullopt;
    if (hint) {
      if (auto v = g.find_vertex(segment_vertex_id(object_id, *hint))) return v;
    }
    for (const auto& seg : obj->segments) {
      if (auto v = g.find_vertex(segment_vertex_id(object_id, seg.id))) {
        ++rep.default_bindings;
        return v;
      }
    }
    return std::nullopt;
  };

  std::vector<Edge> edges = g.edges();
  for (const auto& r : db.relations()) {
    if (r.origin != Origin::Additional) continue;
    const auto s = resolve(r.source_id, std::nullopt);
    const auto t = resolve(r.target_id, r.target_segment);
    if (!s || !t || *s == *t) {
      ++rep.skipped_additional;
      continue;
    }
    ++rep.injected_additional;
    edges.push_back(Edge{*s, *t, NormalizedType::RelatedTo, EdgeOrigin::Additional, {r.id}});
  }
  return ConfrontGraph(g.vertices(), std::move(edges), g.method());
}

ConfrontGraph filter_components(const ConfrontGraph& g, std::size_t threshold, ExtractionReport* report) {
  if (threshold < 1) throw std::invalid_argument("component threshold must be >= 1");
  std::size_t count = 0;
  const auto label = connected_components(UndirectedView(g), &count);
  std::vector<std::size_t> sizes(count, 0);
  for (auto l : label) ++sizes[l];
  std::vector<bool> keep(g.order());
  bool any = false;
  for (std::size_t v = 0; v < g.order(); ++v) {
    keep[v] = sizes[label[v]] >= threshold;
    any = any || keep[v];
  }
  if (!any) {
    throw Error(ErrorCode::EmptyResult,
                "no component reaches " + std::to_string(threshold) + " vertices");
  }
  if (report) {
    for (auto s : sizes) {
      if (s < threshold) {
        ++report->removed_components;
        report->removed_component_vertices += s;
      }
    }
  }
  return induced_subgraph(g, keep);
}

ConfrontGraph full_graph(const Database& db) {
  if (!has_equality_relations(db)) return build_full_graph(db);
  return build_full_graph(merge_equal_objects(db));
}

ConfrontGraph extract(const Database& input, const ExtractionMethod& method, ExtractionReport* report) {
  Database merged;
  const bool needs_merge = has_equality_relations(input);
  if (needs_merge) merged = merge_equal_objects(input);
  const Database& db = needs_merge ? merged : input;

  ConfrontGraph g = build_full_graph(db).with_method(method);
  if (!method.keep_hierarchy) g = filter_hierarchy(g);
  g = handle_nonpunctual(g, db, method, report);
  if (method.use_additional) g = inject_additional(g, db, report);
  return filter_components(g, method.component_threshold, report);
}

}  // namespace confront

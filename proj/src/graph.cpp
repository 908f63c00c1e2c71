#include "confront/graph.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "confront/error.hpp"

namespace confront {

std::string ExtractionMethod::code() const {
  std::string out;
  out += use_additional ? 'E' : 'R';
  out += keep_hierarchy ? 'H' : 'F';
  out += split ? 'S' : 'W';
  switch (scope) {
    case Scope::All: out += "_all"; break;
    case Scope::StreetsOnly: out += "_streets"; break;
    case Scope::TopK: out += "_k"; break;
  }
  return out;
}

std::optional<ExtractionMethod> parse_method_code(std::string_view code) {
  if (std::find(kMethodCodes.begin(), kMethodCodes.end(), code) == kMethodCodes.end()) {
    return std::nullopt;
  }
  ExtractionMethod m;
  m.use_additional = code[0] == 'E';
  m.keep_hierarchy = code[1] == 'H';
  m.split = code[2] == 'S';
  const auto suffix = code.substr(4);
  m.scope = suffix == "all" ? Scope::All : suffix == "streets" ? Scope::StreetsOnly : Scope::TopK;
  return m;
}

namespace {
constexpr std::string_view kEdgeOriginNames[] = {"Primary", "Additional", "Artificial"};
}

std::string_view to_string(EdgeOrigin origin) {
  return kEdgeOriginNames[static_cast<std::size_t>(origin)];
}

std::optional<EdgeOrigin> parse_edge_origin(std::string_view text) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (kEdgeOriginNames[i] == text) return static_cast<EdgeOrigin>(i);
  }
  return std::nullopt;
}

Vertex make_object_vertex(const SpatialObject& obj) {
  Vertex v;
  v.id = obj.id;
  v.object_id = obj.id;
  v.name = obj.name;
  v.kind = obj.kind;
  v.dim = obj.dim;
  v.coord = obj.coord;
  v.parish = obj.parish;
  v.inside_old_walls = obj.inside_old_walls;
  return v;
}

std::string segment_vertex_id(std::string_view object_id, std::string_view segment_id) {
  std::string id(object_id);
  id += '/';
  id += segment_id;
  return id;
}

Vertex make_segment_vertex(const SpatialObject& obj, const Segment& seg) {
  Vertex v = make_object_vertex(obj);
  v.id = segment_vertex_id(obj.id, seg.id);
  v.segment_id = seg.id;
  // pieces are small enough to be treated as points
  v.dim = Dimensionality::Punctual;
  v.coord = seg.coord;
  return v;
}

ConfrontGraph::ConfrontGraph(std::vector<Vertex> vertices, std::vector<Edge> edges,
                             std::optional<ExtractionMethod> method)
    : vertices_(std::move(vertices)), method_(std::move(method)) {
  index_.reserve(vertices_.size());
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!index_.emplace(vertices_[i].id, i).second) {
      throw Error(ErrorCode::MalformedRecord, "duplicate vertex id '" + vertices_[i].id + "'");
    }
  }
  std::map<std::tuple<std::size_t, std::size_t, NormalizedType>, std::size_t> seen;
  edges_.reserve(edges.size());
  for (auto& e : edges) {
    if (e.source >= vertices_.size() || e.target >= vertices_.size()) {
      throw Error(ErrorCode::MalformedRecord, "edge endpoint out of range");
    }
    if (e.source == e.target) {
      throw Error(ErrorCode::MalformedRecord, "self-loop on vertex '" + vertices_[e.source].id + "'");
    }
    const auto [it, inserted] = seen.emplace(std::make_tuple(e.source, e.target, e.type), edges_.size());
    if (inserted) {
      edges_.push_back(std::move(e));
      continue;
    }
    auto& kept = edges_[it->second].relation_ids;
    for (auto& id : e.relation_ids) {
      if (std::find(kept.begin(), kept.end(), id) == kept.end()) kept.push_back(std::move(id));
    }
  }
}

std::optional<std::size_t> ConfrontGraph::find_vertex(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t ConfrontGraph::property_count() const {
  return static_cast<std::size_t>(
      std::count_if(vertices_.begin(), vertices_.end(), [](const Vertex& v) { return v.is_property(); }));
}

ConfrontGraph ConfrontGraph::with_method(const ExtractionMethod& method) const {
  ConfrontGraph copy = *this;
  copy.method_ = method;
  return copy;
}

ConfrontGraph induced_subgraph(const ConfrontGraph& g, const std::vector<bool>& keep) {
  std::vector<std::size_t> remap(g.order(), 0);
  std::vector<Vertex> vertices;
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (!keep[i]) continue;
    remap[i] = vertices.size();
    vertices.push_back(g.vertices()[i]);
  }
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (!keep[e.source] || !keep[e.target]) continue;
    Edge copy = e;
    copy.source = remap[e.source];
    copy.target = remap[e.target];
    edges.push_back(std::move(copy));
  }
  return ConfrontGraph(std::move(vertices), std::move(edges), g.method());
}

UndirectedView::UndirectedView(const ConfrontGraph& g) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(g.size());
  for (const auto& e : g.edges()) pairs.emplace_back(e.source, e.target);
  *this = from_edges(g.order(), pairs);
}

UndirectedView UndirectedView::from_edges(std::size_t n,
                                          std::span<const std::pair<std::size_t, std::size_t>> edges) {
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (const auto& [a, b] : edges) {
    if (a == b) continue;
    adj[a].push_back(static_cast<std::uint32_t>(b));
    adj[b].push_back(static_cast<std::uint32_t>(a));
  }
  UndirectedView view;
  view.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    auto& list = adj[v];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    view.offsets_[v + 1] = view.offsets_[v] + list.size();
  }
  view.neighbors_.reserve(view.offsets_[n]);
  for (auto& list : adj) view.neighbors_.insert(view.neighbors_.end(), list.begin(), list.end());
  return view;
}

std::vector<std::size_t> connected_components(const UndirectedView& view, std::size_t* count) {
  constexpr auto kUnset = static_cast<std::size_t>(-1);
  const std::size_t n = view.order();
  std::vector<std::size_t> label(n, kUnset);
  std::vector<std::size_t> stack;
  std::size_t next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (label[s] != kUnset) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (auto w : view.neighbors(v)) {
        if (label[w] == kUnset) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return label;
}

}  // namespace confront

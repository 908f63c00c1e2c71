#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "confront/data_model.hpp"
#include "confront/method.hpp"
#include "confront/normalize.hpp"

namespace confront {

enum class EdgeOrigin { Primary, Additional, Artificial };

std::string_view to_string(EdgeOrigin origin);
std::optional<EdgeOrigin> parse_edge_origin(std::string_view text);

/// A whole object or one piece of a split object.
struct Vertex {
  std::string id;
  std::string object_id;
  std::optional<std::string> segment_id;
  std::string name;
  ObjectKind kind = ObjectKind::Property;
  Dimensionality dim = Dimensionality::Punctual;
  std::optional<Point> coord;
  std::optional<std::string> parish;
  std::optional<bool> inside_old_walls;

  bool is_property() const { return kind == ObjectKind::Property; }

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

Vertex make_object_vertex(const SpatialObject& obj);
Vertex make_segment_vertex(const SpatialObject& obj, const Segment& seg);
std::string segment_vertex_id(std::string_view object_id, std::string_view segment_id);

struct Edge {
  std::size_t source = 0;
  std::size_t target = 0;
  NormalizedType type = NormalizedType::RelatedTo;
  EdgeOrigin origin = EdgeOrigin::Primary;
  /// Database relations folded into this edge; empty for artificial edges.
  std::vector<std::string> relation_ids;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Directed, typed confront multigraph. Identical (source, target, type)
/// triples are folded into one edge carrying all their relation ids.
class ConfrontGraph {
 public:
  ConfrontGraph() = default;

  /// Throws MalformedRecord on self-loops, out-of-range endpoints or
  /// duplicate vertex ids.
  ConfrontGraph(std::vector<Vertex> vertices, std::vector<Edge> edges,
                std::optional<ExtractionMethod> method = std::nullopt);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::optional<ExtractionMethod>& method() const { return method_; }

  std::size_t order() const { return vertices_.size(); }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return vertices_.empty(); }

  std::optional<std::size_t> find_vertex(std::string_view id) const;
  std::size_t property_count() const;

  ConfrontGraph with_method(const ExtractionMethod& method) const;

  friend bool operator==(const ConfrontGraph& a, const ConfrontGraph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_ && a.method_ == b.method_;
  }

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::optional<ExtractionMethod> method_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Keeps the vertices whose flag is set (order preserved) and the edges
/// between them.
ConfrontGraph induced_subgraph(const ConfrontGraph& g, const std::vector<bool>& keep);

/// Undirected simple view in compressed adjacency form: edge direction,
/// type and multiplicity are dropped.
class UndirectedView {
 public:
  UndirectedView() = default;
  explicit UndirectedView(const ConfrontGraph& g);
  static UndirectedView from_edges(std::size_t n,
                                   std::span<const std::pair<std::size_t, std::size_t>> edges);

  std::size_t order() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return neighbors_.size() / 2; }

  std::span<const std::uint32_t> neighbors(std::size_t v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::size_t degree(std::size_t v) const { return offsets_[v + 1] - offsets_[v]; }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> neighbors_;
};

/// Component label per vertex (0-based, numbered by first vertex) on the
/// undirected view.
std::vector<std::size_t> connected_components(const UndirectedView& view, std::size_t* count = nullptr);

}  // namespace confront

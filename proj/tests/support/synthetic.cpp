#include "synthetic.hpp"

#include <fstream>
#include <sstream>
#include <cmath>

#include <unistd.h>

#include "confront/normalize.hpp"

namespace synth {

using namespace confront;

namespace {

class Builder {
 public:
  explicit Builder(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  std::string raw_type() {
    const auto table = normalization_table();
    while (true) {
      const auto& rule = table[pick(table.size())];
      if (!rule.merge) return std::string(rule.raw);
    }
  }

  Point point() { return {uniform(0, 1000), uniform(0, 1000)}; }

  SpatialObject object(std::string id, ObjectKind kind, Dimensionality dim) {
    SpatialObject o;
    o.id = std::move(id);
    o.name = "name of " + o.id;
    o.kind = kind;
    o.dim = dim;
    if (chance(0.85)) o.coord = point();
    return o;
  }

  void segments(SpatialObject& o, std::size_t count) {
    Point at = o.coord.value_or(point());
    for (std::size_t i = 0; i < count; ++i) {
      Segment s{o.id + "s" + std::to_string(i + 1), std::nullopt};
      if (chance(0.9)) s.coord = Point{at.x + 20.0 * i, at.y + 5.0 * i};
      o.segments.push_back(std::move(s));
    }
  }

  void relate(const SpatialObject& source, const SpatialObject& target, std::string raw,
              Origin origin = Origin::Primary) {
    if (source.id == target.id) return;
    RelationRecord r;
    r.id = "R" + std::to_string(relations.size() + 1);
    r.source_id = source.id;
    r.target_id = target.id;
    r.raw_type = std::move(raw);
    r.origin = origin;
    if (!target.segments.empty() && chance(0.5)) r.target_segment = target.segments[pick(target.segments.size())].id;
    relations.push_back(std::move(r));
  }

  std::mt19937_64 rng_;
  std::vector<RelationRecord> relations;
};

std::string padded(const char* prefix, std::size_t i) {
  std::string digits = std::to_string(i);
  return prefix + std::string(digits.size() < 3 ? 3 - digits.size() : 0, '0') + digits;
}

}  // namespace

Database random_database(std::uint64_t seed, const Options& options) {
  Builder b(seed);
  std::vector<SpatialObject> parishes;
  for (std::size_t i = 0; i < options.parishes; ++i) {
    auto o = b.object(padded("PAR", i), ObjectKind::ParishOrSector, Dimensionality::Surface);
    if (i == 0) b.segments(o, 2);
    parishes.push_back(std::move(o));
  }
  std::vector<SpatialObject> streets;
  for (std::size_t i = 0; i < options.streets; ++i) {
    const double roll = b.uniform(0, 1);
    const auto dim = roll < 0.7 ? Dimensionality::Linear
                                : (roll < 0.9 ? Dimensionality::Surface : Dimensionality::Punctual);
    auto o = b.object(padded("ST", i), ObjectKind::Street, dim);
    if (dim != Dimensionality::Punctual) {
      // a few equal lengths exercise the id tie-break
      o.length_m = b.chance(0.2) ? 100.0 : std::round(b.uniform(50, 900));
      if (b.chance(options.segmented_streets)) b.segments(o, 2 + b.pick(3));
    }
    streets.push_back(std::move(o));
  }
  std::vector<SpatialObject> landmarks;
  landmarks.push_back(b.object("GATE1", ObjectKind::Gate, Dimensionality::Punctual));
  landmarks.push_back(b.object("GATE2", ObjectKind::Gate, Dimensionality::Punctual));
  landmarks.push_back(b.object("WALL", ObjectKind::DefensiveSystem, Dimensionality::Linear));
  b.segments(landmarks.back(), 3);
  landmarks.push_back(b.object("BOR", ObjectKind::Borough, Dimensionality::Surface));
  landmarks.push_back(b.object("LIV", ObjectKind::Livery, Dimensionality::Surface));
  landmarks.push_back(b.object("ROCK", ObjectKind::GeologicalLandmark, Dimensionality::Punctual));
  landmarks.push_back(b.object("CHURCH", ObjectKind::Edifice, Dimensionality::Punctual));
  landmarks.push_back(b.object("PALACE", ObjectKind::Edifice, Dimensionality::Surface));
  b.segments(landmarks.back(), 2);

  std::vector<SpatialObject> properties;
  for (std::size_t i = 0; i < options.properties; ++i) {
    auto o = b.object(padded("P", i), ObjectKind::Property, Dimensionality::Punctual);
    o.declared = b.chance(0.7);
    if (b.chance(0.8)) o.parish = parishes[b.pick(parishes.size())].id;
    if (b.chance(0.8)) o.inside_old_walls = b.chance(0.5);
    properties.push_back(std::move(o));
  }

  for (std::size_t i = 0; i < properties.size(); ++i) {
    const auto& p = properties[i];
    // a few properties stay isolate
    if (b.chance(0.05)) continue;
    const std::size_t count = 1 + b.pick(3);
    for (std::size_t r = 0; r < count; ++r) {
      const double roll = b.uniform(0, 1);
      if (roll < 0.45) {
        b.relate(p, streets[b.pick(streets.size())], b.raw_type());
      } else if (roll < 0.75) {
        b.relate(p, properties[b.pick(properties.size())], b.raw_type());
      } else if (roll < 0.88) {
        b.relate(p, parishes[b.pick(parishes.size())], b.chance(0.5) ? "In" : "Intra");
      } else {
        b.relate(p, landmarks[b.pick(landmarks.size())], b.raw_type());
      }
    }
  }
  for (const auto& gate : {landmarks[0], landmarks[1]}) b.relate(gate, parishes[b.pick(parishes.size())], "In");
  b.relate(landmarks[6], streets[b.pick(streets.size())], "Iuxta");
  for (std::size_t i = 0; i + 1 < streets.size(); i += 3) b.relate(streets[i], streets[i + 1], b.raw_type());

  for (std::size_t i = 0; i < options.egal_pairs && properties.size() > 1; ++i) {
    const auto& a = properties[b.pick(properties.size())];
    const auto& c = properties[b.pick(properties.size())];
    b.relate(a, c, std::string(kEqualityRawType));
  }
  for (std::size_t i = 0; i < options.additional; ++i) {
    const auto& s = streets[b.pick(streets.size())];
    if (b.chance(0.3)) {
      b.relate(landmarks[b.chance(0.5) ? 6 : 7], s, "Iuxta", Origin::Additional);
    } else {
      b.relate(s, streets[b.pick(streets.size())], "Iuxta", Origin::Additional);
    }
  }

  std::vector<SpatialObject> objects;
  for (auto* group : {&parishes, &streets, &landmarks, &properties}) {
    for (auto& o : *group) objects.push_back(std::move(o));
  }
  return make_database(std::move(objects), std::move(b.relations));
}

ConfrontGraph random_graph(std::mt19937_64& rng, std::size_t n, double p, double located) {
  std::bernoulli_distribution link(p);
  std::bernoulli_distribution has_coord(located);
  std::bernoulli_distribution flip(0.5);
  std::uniform_real_distribution<double> coord(0.0, 1000.0);
  std::vector<Vertex> vertices(n);
  for (std::size_t i = 0; i < n; ++i) {
    vertices[i].id = "v" + std::to_string(i);
    vertices[i].object_id = vertices[i].id;
    if (has_coord(rng)) vertices[i].coord = Point{coord(rng), coord(rng)};
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!link(rng)) continue;
      Edge e;
      e.source = flip(rng) ? i : j;
      e.target = e.source == i ? j : i;
      edges.push_back(e);
    }
  }
  return ConfrontGraph(std::move(vertices), std::move(edges));
}

ConfrontGraph graph_from_edges(std::size_t n, const oracle::EdgeList& edges,
                               const std::vector<std::optional<Point>>& coords) {
  std::vector<Vertex> vertices(n);
  for (std::size_t i = 0; i < n; ++i) {
    vertices[i].id = "v" + std::to_string(i);
    vertices[i].object_id = vertices[i].id;
    if (i < coords.size()) vertices[i].coord = coords[i];
  }
  std::vector<Edge> out;
  for (const auto& [u, v] : edges) {
    Edge e;
    e.source = std::min(u, v);
    e.target = std::max(u, v);
    out.push_back(e);
  }
  return ConfrontGraph(std::move(vertices), std::move(out));
}

oracle::EdgeList edge_list(const ConfrontGraph& g) {
  std::vector<std::vector<bool>> seen(g.order(), std::vector<bool>(g.order(), false));
  oracle::EdgeList out;
  for (const auto& e : g.edges()) {
    const auto a = std::min(e.source, e.target);
    const auto b = std::max(e.source, e.target);
    if (!seen[a][b]) {
      seen[a][b] = true;
      out.emplace_back(a, b);
    }
  }
  return out;
}

ConfrontGraph two_triangles() {
  return graph_from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
}

ConfrontGraph planted_partition(std::mt19937_64& rng, std::size_t blocks, std::size_t size, double p_in,
                                double p_out) {
  std::bernoulli_distribution in(p_in);
  std::bernoulli_distribution out(p_out);
  const std::size_t n = blocks * size;
  oracle::EdgeList edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool same = i / size == j / size;
      if (same ? in(rng) : out(rng)) edges.emplace_back(i, j);
    }
  }
  return graph_from_edges(n, edges);
}

std::filesystem::path temp_dir(const std::string& name) {
  static std::size_t counter = 0;
  const auto dir = std::filesystem::temp_directory_path() /
                   ("confront-test-" + name + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

}  // namespace synth

#include "confront/graph_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "confront/error.hpp"

namespace confront {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

namespace {

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string old_walls_text(const std::optional<bool>& flag) {
  if (!flag) return "";
  return *flag ? "inside" : "outside";
}

std::string relation_list(const std::vector<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += ' ';
    out += id;
  }
  return out;
}

struct Attribute {
  const char* name;
  const char* type;
};

constexpr std::array<Attribute, 10> kNodeAttributes{{{"name", "string"},
                                                     {"object_id", "string"},
                                                     {"segment_id", "string"},
                                                     {"kind", "string"},
                                                     {"dim", "string"},
                                                     {"property", "boolean"},
                                                     {"parish", "string"},
                                                     {"old_walls", "string"},
                                                     {"x", "double"},
                                                     {"y", "double"}}};

constexpr std::array<Attribute, 3> kEdgeAttributes{{{"type", "string"},
                                                    {"origin", "string"},
                                                    {"relations", "string"}}};

/// Node attribute values in kNodeAttributes order; empty means absent.
std::array<std::string, 10> node_values(const Vertex& v) {
  return {v.name,
          v.object_id,
          v.segment_id.value_or(""),
          std::string(to_string(v.kind)),
          std::string(to_string(v.dim)),
          v.is_property() ? "true" : "false",
          v.parish.value_or(""),
          old_walls_text(v.inside_old_walls),
          v.coord ? format_double(v.coord->x) : "",
          v.coord ? format_double(v.coord->y) : ""};
}

std::array<std::string, 3> edge_values(const Edge& e) {
  return {std::string(to_string(e.type)), std::string(to_string(e.origin)),
          relation_list(e.relation_ids)};
}

}  // namespace

void write_graphml(std::ostream& out, const ConfrontGraph& g, const GraphFileMeta& meta) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\" "
         "xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" "
         "xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
         "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n";
  for (const char* key : {"method", "k", "threshold", "property_baseline", "manifest"}) {
    out << "  <key id=\"g_" << key << "\" for=\"graph\" attr.name=\"" << key
        << "\" attr.type=\"string\"/>\n";
  }
  for (const auto& a : kNodeAttributes) {
    out << "  <key id=\"v_" << a.name << "\" for=\"node\" attr.name=\"" << a.name
        << "\" attr.type=\"" << a.type << "\"/>\n";
  }
  for (const auto& a : kEdgeAttributes) {
    out << "  <key id=\"e_" << a.name << "\" for=\"edge\" attr.name=\"" << a.name
        << "\" attr.type=\"" << a.type << "\"/>\n";
  }
  out << "  <graph id=\"G\" edgedefault=\"directed\">\n";
  auto graph_data = [&](const char* key, const std::string& value) {
    out << "    <data key=\"g_" << key << "\">" << xml_escape(value) << "</data>\n";
  };
  if (const auto& m = g.method()) {
    graph_data("method", m->code());
    graph_data("k", std::to_string(m->k));
    graph_data("threshold", std::to_string(m->component_threshold));
  }
  graph_data("property_baseline", std::to_string(meta.property_baseline));
  if (!meta.manifest_hash.empty()) graph_data("manifest", meta.manifest_hash);

  for (const auto& v : g.vertices()) {
    out << "    <node id=\"" << xml_escape(v.id) << "\">";
    const auto values = node_values(v);
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i].empty()) continue;
      out << "<data key=\"v_" << kNodeAttributes[i].name << "\">" << xml_escape(values[i]) << "</data>";
    }
    out << "</node>\n";
  }
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const Edge& e = g.edges()[i];
    out << "    <edge id=\"e" << i << "\" source=\"" << xml_escape(g.vertices()[e.source].id)
        << "\" target=\"" << xml_escape(g.vertices()[e.target].id) << "\">";
    const auto values = edge_values(e);
    for (std::size_t a = 0; a < values.size(); ++a) {
      if (values[a].empty()) continue;
      out << "<data key=\"e_" << kEdgeAttributes[a].name << "\">" << xml_escape(values[a]) << "</data>";
    }
    out << "</edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
}

void write_gexf(std::ostream& out, const ConfrontGraph& g, const GraphFileMeta& meta) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<gexf xmlns=\"http://gexf.net/1.3\" version=\"1.3\">\n"
      << "  <meta>\n    <creator>confront-net</creator>\n    <description>";
  std::string description;
  if (const auto& m = g.method()) {
    description = m->code() + " k=" + std::to_string(m->k) +
                  " threshold=" + std::to_string(m->component_threshold) + " ";
  }
  description += "property_baseline=" + std::to_string(meta.property_baseline);
  if (!meta.manifest_hash.empty()) description += " manifest=" + meta.manifest_hash;
  out << xml_escape(description) << "</description>\n  </meta>\n"
      << "  <graph defaultedgetype=\"directed\" mode=\"static\">\n"
      << "    <attributes class=\"node\">\n";
  for (std::size_t i = 0; i < kNodeAttributes.size(); ++i) {
    out << "      <attribute id=\"" << i << "\" title=\"" << kNodeAttributes[i].name << "\" type=\""
        << kNodeAttributes[i].type << "\"/>\n";
  }
  out << "    </attributes>\n    <attributes class=\"edge\">\n";
  for (std::size_t i = 0; i < kEdgeAttributes.size(); ++i) {
    out << "      <attribute id=\"" << i << "\" title=\"" << kEdgeAttributes[i].name << "\" type=\""
        << kEdgeAttributes[i].type << "\"/>\n";
  }
  out << "    </attributes>\n    <nodes>\n";
  for (const auto& v : g.vertices()) {
    out << "      <node id=\"" << xml_escape(v.id) << "\" label=\"" << xml_escape(v.name.empty() ? v.id : v.name)
        << "\"><attvalues>";
    const auto values = node_values(v);
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i].empty()) continue;
      out << "<attvalue for=\"" << i << "\" value=\"" << xml_escape(values[i]) << "\"/>";
    }
    out << "</attvalues></node>\n";
  }
  out << "    </nodes>\n    <edges>\n";
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const Edge& e = g.edges()[i];
    out << "      <edge id=\"" << i << "\" source=\"" << xml_escape(g.vertices()[e.source].id)
        << "\" target=\"" << xml_escape(g.vertices()[e.target].id) << "\"><attvalues>";
    const auto values = edge_values(e);
    for (std::size_t a = 0; a < values.size(); ++a) {
      if (values[a].empty()) continue;
      out << "<attvalue for=\"" << a << "\" value=\"" << xml_escape(values[a]) << "\"/>";
    }
    out << "</attvalues></edge>\n";
  }
  out << "    </edges>\n  </graph>\n</gexf>\n";
}

void write_community_gexf(std::ostream& out, const CommunityNetwork& net,
                          const std::string& manifest_hash) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<gexf xmlns=\"http://gexf.net/1.3\" version=\"1.3\">\n"
      << "  <meta>\n    <creator>confront-net</creator>\n    <description>community network";
  if (!manifest_hash.empty()) out << " manifest=" << xml_escape(manifest_hash);
  out << "</description>\n  </meta>\n"
      << "  <graph defaultedgetype=\"undirected\" mode=\"static\">\n"
      << "    <attributes class=\"node\">\n"
      << "      <attribute id=\"size\" title=\"size\" type=\"integer\"/>\n"
      << "      <attribute id=\"intra_edges\" title=\"intra_edges\" type=\"integer\"/>\n"
      << "      <attribute id=\"properties\" title=\"properties\" type=\"integer\"/>\n"
      << "    </attributes>\n    <nodes>\n";
  for (const auto& node : net.nodes) {
    out << "      <node id=\"" << node.community << "\" label=\"C" << node.community
        << "\"><attvalues><attvalue for=\"size\" value=\"" << node.size
        << "\"/><attvalue for=\"intra_edges\" value=\"" << node.intra_edges
        << "\"/><attvalue for=\"properties\" value=\""
        << node.kinds[static_cast<std::size_t>(ObjectKind::Property)] << "\"/></attvalues></node>\n";
  }
  out << "    </nodes>\n    <edges>\n";
  for (std::size_t i = 0; i < net.links.size(); ++i) {
    const auto& l = net.links[i];
    out << "      <edge id=\"" << i << "\" source=\"" << l.a << "\" target=\"" << l.b
        << "\" weight=\"" << l.weight << "\"/>\n";
  }
  out << "    </edges>\n  </graph>\n</gexf>\n";
}

namespace {

constexpr char kCacheMagic[8] = {'C', 'N', 'F', 'G', 'R', 'A', 'P', 'H'};

class CacheWriter {
 public:
  explicit CacheWriter(std::ostream& out) : out_(out) {}

  void u8(std::uint8_t v) { out_.put(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double v) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &v, sizeof bits);
    u64(bits);
  }
  void str(const std::string& s) {
    u64(s.size());
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }
  void opt_str(const std::optional<std::string>& s) {
    u8(s ? 1 : 0);
    if (s) str(*s);
  }

 private:
  std::ostream& out_;
};

class CacheReader {
 public:
  explicit CacheReader(std::istream& in) : in_(in) {}

  std::uint8_t u8() {
    const int c = in_.get();
    if (c == std::char_traits<char>::eof()) fail("truncated graph cache");
    return static_cast<std::uint8_t>(c);
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(u8()) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(u8()) << (8 * i);
    return v;
  }
  double f64() {
    const std::uint64_t bits = u64();
    double v = 0.0;
    std::memcpy(&v, &bits, sizeof v);
    return v;
  }
  std::string str() {
    const std::uint64_t n = u64();
    if (n > (1u << 30)) fail("corrupt string length in graph cache");
    std::string s(n, '\0');
    in_.read(s.data(), static_cast<std::streamsize>(n));
    if (!in_) fail("truncated graph cache");
    return s;
  }
  std::optional<std::string> opt_str() {
    if (u8() == 0) return std::nullopt;
    return str();
  }
  [[noreturn]] static void fail(const std::string& what) { throw Error(ErrorCode::Io, what); }

 private:
  std::istream& in_;
};

}  // namespace

void write_graph_cache(std::ostream& out, const ConfrontGraph& g, const GraphFileMeta& meta) {
  CacheWriter w(out);
  out.write(kCacheMagic, sizeof kCacheMagic);
  w.u32(kGraphCacheVersion);
  w.u64(meta.property_baseline);
  w.str(meta.manifest_hash);
  const auto& m = g.method();
  w.u8(m ? 1 : 0);
  if (m) {
    w.u8(m->use_additional);
    w.u8(m->keep_hierarchy);
    w.u8(m->split);
    w.u8(static_cast<std::uint8_t>(m->scope));
    w.u64(m->k);
    w.u64(m->component_threshold);
  }
  w.u64(g.order());
  for (const auto& v : g.vertices()) {
    w.str(v.id);
    w.str(v.object_id);
    w.opt_str(v.segment_id);
    w.str(v.name);
    w.u8(static_cast<std::uint8_t>(v.kind));
    w.u8(static_cast<std::uint8_t>(v.dim));
    w.u8(v.coord ? 1 : 0);
    if (v.coord) {
      w.f64(v.coord->x);
      w.f64(v.coord->y);
    }
    w.opt_str(v.parish);
    w.u8(v.inside_old_walls ? (*v.inside_old_walls ? 2 : 1) : 0);
  }
  w.u64(g.size());
  for (const auto& e : g.edges()) {
    w.u64(e.source);
    w.u64(e.target);
    w.u8(static_cast<std::uint8_t>(e.type));
    w.u8(static_cast<std::uint8_t>(e.origin));
    w.u64(e.relation_ids.size());
    for (const auto& id : e.relation_ids) w.str(id);
  }
}

std::pair<ConfrontGraph, GraphFileMeta> read_graph_cache(std::istream& in) {
  char magic[sizeof kCacheMagic] = {};
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kCacheMagic, sizeof magic) != 0) {
    CacheReader::fail("not a graph cache file");
  }
  CacheReader r(in);
  const std::uint32_t version = r.u32();
  if (version != kGraphCacheVersion) {
    CacheReader::fail("unsupported graph cache version " + std::to_string(version));
  }
  auto bounded = [](std::uint64_t value, std::uint64_t limit) {
    if (value >= limit) CacheReader::fail("corrupt enumeration in graph cache");
    return value;
  };
  GraphFileMeta meta;
  meta.property_baseline = r.u64();
  meta.manifest_hash = r.str();
  std::optional<ExtractionMethod> method;
  if (r.u8()) {
    ExtractionMethod m;
    m.use_additional = r.u8() != 0;
    m.keep_hierarchy = r.u8() != 0;
    m.split = r.u8() != 0;
    m.scope = static_cast<Scope>(bounded(r.u8(), 3));
    m.k = r.u64();
    m.component_threshold = r.u64();
    method = m;
  }
  const std::uint64_t n = r.u64();
  std::vector<Vertex> vertices;
  for (std::uint64_t i = 0; i < n; ++i) {
    Vertex v;
    v.id = r.str();
    v.object_id = r.str();
    v.segment_id = r.opt_str();
    v.name = r.str();
    v.kind = static_cast<ObjectKind>(bounded(r.u8(), kObjectKindCount));
    v.dim = static_cast<Dimensionality>(bounded(r.u8(), 3));
    if (r.u8()) {
      const double x = r.f64();
      const double y = r.f64();
      v.coord = Point{x, y};
    }
    v.parish = r.opt_str();
    const auto walls = bounded(r.u8(), 3);
    if (walls) v.inside_old_walls = walls == 2;
    vertices.push_back(std::move(v));
  }
  const std::uint64_t m = r.u64();
  std::vector<Edge> edges;
  for (std::uint64_t i = 0; i < m; ++i) {
    Edge e;
    e.source = r.u64();
    e.target = r.u64();
    e.type = static_cast<NormalizedType>(bounded(r.u8(), 8));
    e.origin = static_cast<EdgeOrigin>(bounded(r.u8(), 3));
    const std::uint64_t ids = r.u64();
    for (std::uint64_t j = 0; j < ids; ++j) e.relation_ids.push_back(r.str());
    edges.push_back(std::move(e));
  }
  return {ConfrontGraph(std::move(vertices), std::move(edges), method), meta};
}

std::pair<ConfrontGraph, GraphFileMeta> read_graph_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read '" + path.string() + "'");
  try {
    return read_graph_cache(in);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_atomically(const std::filesystem::path& path,
                      const std::function<void(std::ostream&)>& writer) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + tmp.string() + "'");
    writer(out);
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "failed writing '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace confront

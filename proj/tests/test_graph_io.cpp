#include <sstream>

#include <gtest/gtest.h>

#include "confront/error.hpp"
#include "confront/extract.hpp"
#include "confront/graph_io.hpp"
#include "synthetic.hpp"

using namespace confront;

namespace {

ConfrontGraph sample_graph() {
  const Database db = synth::random_database(4);
  auto m = *parse_method_code("EFS_all");
  m.component_threshold = 2;
  return extract(db, m);
}

}  // namespace

TEST(GraphIo, CacheRoundTrip) {
  const auto g = sample_graph();
  const GraphFileMeta meta{123, "abc"};
  std::stringstream buf;
  write_graph_cache(buf, g, meta);
  const auto [back, back_meta] = read_graph_cache(buf);
  EXPECT_EQ(back, g);
  EXPECT_EQ(back_meta, meta);
}

TEST(GraphIo, CacheRejectsForeignAndTruncatedInput) {
  std::stringstream junk("definitely not a cache");
  EXPECT_THROW(read_graph_cache(junk), Error);
  std::stringstream buf;
  write_graph_cache(buf, sample_graph(), {});
  const std::string bytes = buf.str();
  std::stringstream cut(bytes.substr(0, bytes.size() / 2));
  try {
    read_graph_cache(cut);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
  std::string wrong_version = bytes;
  wrong_version[8] = 9;
  std::stringstream versioned(wrong_version);
  EXPECT_THROW(read_graph_cache(versioned), Error);
}

TEST(GraphIo, GraphmlCarriesAttributes) {
  const auto g = sample_graph();
  std::ostringstream out;
  write_graphml(out, g, {7, "hash"});
  const std::string xml = out.str();
  EXPECT_NE(xml.find("edgedefault=\"directed\""), std::string::npos);
  EXPECT_NE(xml.find("<data key=\"g_method\">EFS_all</data>"), std::string::npos);
  EXPECT_NE(xml.find("<data key=\"g_manifest\">hash</data>"), std::string::npos);
  EXPECT_NE(xml.find("attr.name=\"old_walls\""), std::string::npos);
  std::size_t nodes = 0;
  std::size_t edges = 0;
  for (std::size_t at = 0; (at = xml.find("<node ", at)) != std::string::npos; ++at) ++nodes;
  for (std::size_t at = 0; (at = xml.find("<edge ", at)) != std::string::npos; ++at) ++edges;
  EXPECT_EQ(nodes, g.order());
  EXPECT_EQ(edges, g.size());
}

TEST(GraphIo, XmlEscaping) {
  std::vector<Vertex> vertices(2);
  vertices[0].id = vertices[0].object_id = "a&b";
  vertices[0].name = "<\"quoted\">";
  vertices[1].id = vertices[1].object_id = "c";
  const ConfrontGraph g(vertices, {Edge{0, 1}});
  std::ostringstream graphml;
  write_graphml(graphml, g, {});
  EXPECT_NE(graphml.str().find("a&amp;b"), std::string::npos);
  EXPECT_NE(graphml.str().find("&lt;&quot;quoted&quot;&gt;"), std::string::npos);
  std::ostringstream gexf;
  write_gexf(gexf, g, {});
  EXPECT_NE(gexf.str().find("source=\"a&amp;b\""), std::string::npos);
}

TEST(GraphIo, DeterministicOutput) {
  std::ostringstream a;
  std::ostringstream b;
  write_gexf(a, sample_graph(), {1, "h"});
  write_gexf(b, sample_graph(), {1, "h"});
  EXPECT_EQ(a.str(), b.str());
}

TEST(GraphIo, CommunityGexf) {
  CommunityNetwork net;
  net.nodes.resize(2);
  net.nodes[0].community = 1;
  net.nodes[0].size = 4;
  net.nodes[1].community = 2;
  net.nodes[1].size = 2;
  net.links.push_back({1, 2, 3});
  std::ostringstream out;
  write_community_gexf(out, net, "h");
  const std::string xml = out.str();
  EXPECT_NE(xml.find("defaultedgetype=\"undirected\""), std::string::npos);
  EXPECT_NE(xml.find("weight=\"3\""), std::string::npos);
  EXPECT_NE(xml.find("<attvalue for=\"size\" value=\"4\"/>"), std::string::npos);
}

TEST(GraphIo, AtomicWriteReplacesFile) {
  const auto dir = synth::temp_dir("atomic");
  const auto path = dir / "sub" / "f.txt";
  write_atomically(path, [](std::ostream& o) { o << "one"; });
  write_atomically(path, [](std::ostream& o) { o << "two"; });
  EXPECT_EQ(synth::read_file(path), "two");
  EXPECT_FALSE(std::filesystem::exists(dir / "sub" / "f.txt.tmp"));
}

TEST(GraphIo, FormatDouble) {
  EXPECT_EQ(format_double(1.2), "1.2");
  EXPECT_EQ(format_double(0.1 + 0.2), "0.30000000000000004");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
}

#include <chrono>
#include <numeric>

#include <gtest/gtest.h>

#include "confront/community.hpp"
#include "confront/error.hpp"
#include "synthetic.hpp"

using namespace confront;

TEST(Modularity, HandValues) {
  const auto g = synth::two_triangles();
  const UndirectedView view(g);
  EXPECT_EQ(modularity(view, {1, 1, 1, 1, 1, 1}), 0.0);
  EXPECT_NEAR(modularity(view, {1, 1, 1, 2, 2, 2}), 5.0 / 14.0, 1e-12);
  const auto triangle = synth::graph_from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_NEAR(modularity(UndirectedView(triangle), {1, 2, 3}), -1.0 / 3.0, 1e-12);
}

TEST(Modularity, UncoveredVertex) {
  const UndirectedView view(synth::two_triangles());
  for (const std::vector<std::uint32_t>& bad : {std::vector<std::uint32_t>{1, 1, 1},
                                                std::vector<std::uint32_t>{1, 1, 1, 0, 2, 2}}) {
    try {
      modularity(view, bad);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::UncoveredVertex);
    }
  }
}

TEST(Modularity, MatchesOracleOnRandomPartitions) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = synth::random_graph(rng, 2 + rng() % 40, 0.1);
    std::vector<std::uint32_t> assignment(g.order());
    for (auto& c : assignment) c = 1 + static_cast<std::uint32_t>(rng() % 4);
    EXPECT_NEAR(modularity(UndirectedView(g), assignment),
                oracle::modularity(g.order(), synth::edge_list(g), assignment), 1e-12);
  }
}

TEST(Louvain, TwoTriangles) {
  const auto p = louvain(synth::two_triangles());
  EXPECT_EQ(p.assignment, (std::vector<std::uint32_t>{1, 1, 1, 2, 2, 2}));
  EXPECT_NEAR(p.modularity, 5.0 / 14.0, 1e-12);
  EXPECT_EQ(p.algorithm, "louvain");
}

TEST(Louvain, CompleteGraphNotWorseThanSingletons) {
  const auto k4 = synth::graph_from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  const auto p = louvain(k4);
  EXPECT_GE(p.modularity, modularity(UndirectedView(k4), {1, 2, 3, 4}));
}

TEST(Louvain, ReportedQualityIsSelfConsistentAndMonotone) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = synth::planted_partition(rng, 3, 20, 0.3, 0.03);
    const auto p = louvain(g, trial);
    EXPECT_EQ(p.modularity, modularity(g, p));
    for (std::size_t i = 1; i < p.level_modularity.size(); ++i) {
      EXPECT_GE(p.level_modularity[i], p.level_modularity[i - 1] - 1e-12);
    }
    // ids contiguous from 1
    std::vector<bool> used(p.community_count() + 1, false);
    for (auto c : p.assignment) used[c] = true;
    for (std::size_t c = 1; c < used.size(); ++c) EXPECT_TRUE(used[c]);
  }
}

TEST(Louvain, ReproducibleForSeedAndThreadCount) {
  std::mt19937_64 rng(44);
  const auto g = synth::planted_partition(rng, 4, 25, 0.3, 0.02);
  const auto a = louvain(g, 1);
  setenv("CONFRONT_THREADS", "3", 1);
  const auto b = louvain(g, 1);
  unsetenv("CONFRONT_THREADS");
  EXPECT_EQ(a.assignment, b.assignment);
  EXPECT_EQ(a.modularity, b.modularity);
}

TEST(Louvain, EdgelessGraphIsAllSingletons) {
  const auto p = louvain(synth::graph_from_edges(3, {}));
  EXPECT_EQ(p.assignment, (std::vector<std::uint32_t>{1, 2, 3}));
  EXPECT_EQ(p.modularity, 0.0);
}

TEST(CommunityStats, SingletonAndWholeGraph) {
  std::mt19937_64 rng(6);
  const auto g = synth::random_graph(rng, 30, 0.15, 0.9);
  const auto whole = make_partition(g, std::vector<std::uint32_t>(g.order(), 7));
  const auto stats = community_stats(g, whole);
  ASSERT_EQ(stats.size(), 1u);
  const auto s = summarize(g, g.order());
  EXPECT_EQ(stats[0].summary.n, s.n);
  EXPECT_EQ(stats[0].summary.m, s.m);
  EXPECT_EQ(stats[0].summary.d_harm, s.d_harm);
  EXPECT_EQ(stats[0].summary.rho_d, s.rho_d);

  std::vector<std::uint32_t> ids(g.order());
  std::iota(ids.begin(), ids.end(), 1u);
  const auto singletons = community_stats(g, make_partition(g, ids));
  for (const auto& c : singletons) {
    EXPECT_EQ(c.summary.n, 1u);
    EXPECT_EQ(c.summary.m, 0u);
    EXPECT_EQ(c.summary.property_coverage, 1.0);
    EXPECT_FALSE(c.summary.rho_d);
  }
}

TEST(CommunityNetwork, CrossEdgesBecomeOneWeightedLink) {
  const auto g = synth::graph_from_edges(4, {{0, 1}, {2, 3}, {0, 2}, {0, 3}, {1, 3}});
  const auto p = make_partition(g, {1, 1, 2, 2});
  const auto net = community_network(g, p);
  ASSERT_EQ(net.links.size(), 1u);
  EXPECT_EQ(net.links[0].weight, 3u);
  EXPECT_EQ(net.nodes[0].intra_edges + net.nodes[1].intra_edges, 2u);
}

TEST(CommunityNetwork, SingletonsMirrorTheGraph) {
  std::mt19937_64 rng(9);
  const auto g = synth::random_graph(rng, 20, 0.2);
  std::vector<std::uint32_t> ids(g.order());
  std::iota(ids.begin(), ids.end(), 1u);
  const auto net = community_network(g, make_partition(g, ids));
  std::size_t total = 0;
  for (const auto& l : net.links) total += l.weight;
  EXPECT_EQ(total, g.size());
  for (const auto& node : net.nodes) EXPECT_EQ(node.size, 1u);
}

TEST(CommunityNetwork, Composition) {
  std::vector<Vertex> vertices(3);
  vertices[0] = {"a", "a", std::nullopt, "", ObjectKind::Property, Dimensionality::Punctual, std::nullopt, "P1", true};
  vertices[1] = {"b", "b", std::nullopt, "", ObjectKind::Property, Dimensionality::Punctual, std::nullopt, std::nullopt,
                 std::nullopt};
  vertices[2] = {"s", "s", std::nullopt, "", ObjectKind::Street, Dimensionality::Linear, std::nullopt, "P1", false};
  const ConfrontGraph g(vertices, {Edge{0, 1}, Edge{1, 2}});
  const auto net = community_network(g, make_partition(g, {1, 1, 1}));
  ASSERT_EQ(net.nodes.size(), 1u);
  const auto& node = net.nodes[0];
  EXPECT_EQ(node.kinds[static_cast<std::size_t>(ObjectKind::Property)], 2u);
  EXPECT_EQ(node.kinds[static_cast<std::size_t>(ObjectKind::Street)], 1u);
  EXPECT_EQ(node.parishes.at("P1"), 1u);
  EXPECT_EQ(node.parishes.at(""), 1u);
  EXPECT_EQ(node.old_walls.inside, 1u);
  EXPECT_EQ(node.old_walls.unknown, 1u);
  EXPECT_EQ(node.old_walls.outside, 0u);
}

TEST(Gini, UniformAndSkewed) {
  CommunityPartition uniform;
  uniform.assignment = {1, 1, 2, 2, 3, 3};
  EXPECT_NEAR(size_gini(uniform), 0.0, 1e-15);
  CommunityPartition skewed;
  skewed.assignment = {1, 1, 1, 1, 1, 2};
  EXPECT_GT(size_gini(skewed), 0.3);
}

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "confront/data_model.hpp"
#include "confront/graph.hpp"
#include "confront/metrics.hpp"

namespace confront {

struct CommunityPartition {
  /// Community id per vertex, contiguous from 1.
  std::vector<std::uint32_t> assignment;
  double modularity = 0.0;
  std::string algorithm;
  std::uint64_t seed = 0;
  /// Modularity after each aggregation level (Louvain only).
  std::vector<double> level_modularity;

  std::size_t community_count() const;
};

/// Newman modularity on the undirected simple view. Throws UncoveredVertex
/// when the assignment does not cover every vertex with an id >= 1.
double modularity(const UndirectedView& view, const std::vector<std::uint32_t>& assignment);
double modularity(const ConfrontGraph& g, const CommunityPartition& p);

/// Louvain (local moving + aggregation) on the undirected simple view.
/// Vertex visiting order is a seeded shuffle, so results are reproducible
/// for a given seed.
CommunityPartition louvain(const UndirectedView& view, std::uint64_t seed = 0);
CommunityPartition louvain(const ConfrontGraph& g, std::uint64_t seed = 0);

/// Wraps an externally computed assignment, relabelling ids contiguously by
/// first appearance and scoring it.
CommunityPartition make_partition(const ConfrontGraph& g, const std::vector<std::uint32_t>& raw_ids,
                                  std::string algorithm = "external");

struct CommunityStats {
  std::uint32_t community = 0;
  /// Statistics of the induced subgraph; property_coverage is the share of
  /// properties within the community.
  GraphSummary summary;
};

std::vector<CommunityStats> community_stats(const ConfrontGraph& g, const CommunityPartition& p);

struct OldWallsSplit {
  std::size_t inside = 0;
  std::size_t outside = 0;
  std::size_t unknown = 0;
};

struct CommunityNode {
  std::uint32_t community = 0;
  std::size_t size = 0;
  std::size_t intra_edges = 0;
  std::array<std::size_t, kObjectKindCount> kinds{};
  /// Parish of the property vertices; empty key for unknown parish.
  std::map<std::string, std::size_t> parishes;
  /// Old-walls position of the property vertices.
  OldWallsSplit old_walls;
};

struct CommunityLink {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  std::size_t weight = 0;
};

/// Quotient graph: one node per community, links weighted by the number of
/// original edges between two communities.
struct CommunityNetwork {
  std::vector<CommunityNode> nodes;
  std::vector<CommunityLink> links;
};

CommunityNetwork community_network(const ConfrontGraph& g, const CommunityPartition& p);

/// Gini coefficient of community sizes; 0 for perfectly uniform sizes.
double size_gini(const CommunityPartition& p);

}  // namespace confront

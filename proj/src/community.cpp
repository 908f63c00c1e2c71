#include "confront/community.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_map>

#include "confront/error.hpp"
#include "confront/parallel.hpp"

namespace confront {

namespace {

/// Weighted graph used across Louvain levels. Each undirected edge appears
/// in both adjacency lists; loops are kept apart.
struct WeightedGraph {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;
  std::vector<double> loops;

  std::size_t order() const { return adj.size(); }

  double strength(std::size_t v) const {
    double k = 2.0 * loops[v];
    for (const auto& [w, weight] : adj[v]) k += weight;
    return k;
  }
};

WeightedGraph from_view(const UndirectedView& view) {
  WeightedGraph g;
  g.adj.resize(view.order());
  g.loops.assign(view.order(), 0.0);
  for (std::size_t v = 0; v < view.order(); ++v) {
    for (auto w : view.neighbors(v)) g.adj[v].emplace_back(w, 1.0);
  }
  return g;
}

std::vector<std::size_t> shuffled_order(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  // explicit Fisher-Yates keeps the sequence identical across standard libraries
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

/// One local-moving phase. Returns true when at least one vertex changed
/// community; `community` is left with arbitrary (non-contiguous) labels.
bool local_moving(const WeightedGraph& g, double total_weight_x2, std::vector<std::size_t>& community,
                  std::mt19937_64& rng) {
  const std::size_t n = g.order();
  std::vector<double> strength(n);
  std::vector<double> total(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    strength[v] = g.strength(v);
    total[community[v]] += strength[v];
  }
  const auto order = shuffled_order(n, rng);
  std::vector<double> link(n, 0.0);
  std::vector<std::size_t> touched;
  bool any_move = false;
  bool moved = true;
  constexpr double kMinGain = 1e-12;
  while (moved) {
    moved = false;
    for (std::size_t v : order) {
      const std::size_t current = community[v];
      touched.clear();
      for (const auto& [w, weight] : g.adj[v]) {
        const std::size_t c = community[w];
        if (link[c] == 0.0) touched.push_back(c);
        link[c] += weight;
      }
      total[current] -= strength[v];
      const double k_over = strength[v] / total_weight_x2;
      std::size_t best = current;
      double best_gain = link[current] - total[current] * k_over;
      for (std::size_t c : touched) {
        const double gain = link[c] - total[c] * k_over;
        if (gain > best_gain + kMinGain) {
          best_gain = gain;
          best = c;
        }
      }
      total[best] += strength[v];
      community[v] = best;
      for (std::size_t c : touched) link[c] = 0.0;
      link[current] = 0.0;
      if (best != current) {
        moved = true;
        any_move = true;
      }
    }
  }
  return any_move;
}

std::vector<std::uint32_t> relabel(const std::vector<std::size_t>& labels) {
  std::unordered_map<std::size_t, std::uint32_t> ids;
  std::vector<std::uint32_t> out(labels.size());
  for (std::size_t v = 0; v < labels.size(); ++v) {
    const auto [it, inserted] = ids.emplace(labels[v], static_cast<std::uint32_t>(ids.size() + 1));
    out[v] = it->second;
  }
  return out;
}

WeightedGraph aggregate(const WeightedGraph& g, const std::vector<std::uint32_t>& community,
                        std::size_t count) {
  WeightedGraph out;
  out.adj.resize(count);
  out.loops.assign(count, 0.0);
  std::vector<std::unordered_map<std::uint32_t, double>> merged(count);
  for (std::size_t v = 0; v < g.order(); ++v) {
    const std::uint32_t cv = community[v] - 1;
    out.loops[cv] += g.loops[v];
    for (const auto& [w, weight] : g.adj[v]) {
      const std::uint32_t cw = community[w] - 1;
      if (cv == cw) {
        out.loops[cv] += weight / 2.0;  // each internal edge is seen from both ends
      } else {
        merged[cv][cw] += weight;
      }
    }
  }
  for (std::size_t c = 0; c < count; ++c) {
    out.adj[c].assign(merged[c].begin(), merged[c].end());
    std::sort(out.adj[c].begin(), out.adj[c].end());
  }
  return out;
}

}  // namespace

std::size_t CommunityPartition::community_count() const {
  std::uint32_t top = 0;
  for (auto c : assignment) top = std::max(top, c);
  return top;
}

double modularity(const UndirectedView& view, const std::vector<std::uint32_t>& assignment) {
  const std::size_t n = view.order();
  if (assignment.size() != n) {
    throw Error(ErrorCode::UncoveredVertex, "partition covers " + std::to_string(assignment.size()) +
                                                " of " + std::to_string(n) + " vertices");
  }
  std::uint32_t top = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (assignment[v] == 0) {
      throw Error(ErrorCode::UncoveredVertex, "vertex " + std::to_string(v) + " has no community");
    }
    top = std::max(top, assignment[v]);
  }
  const double m = static_cast<double>(view.edge_count());
  if (m == 0.0) return 0.0;
  std::vector<double> intra(top + 1, 0.0);
  std::vector<double> degree(top + 1, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    degree[assignment[v]] += static_cast<double>(view.degree(v));
    for (auto w : view.neighbors(v)) {
      if (w > v && assignment[w] == assignment[v]) intra[assignment[v]] += 1.0;
    }
  }
  double q = 0.0;
  for (std::uint32_t c = 1; c <= top; ++c) {
    const double share = degree[c] / (2.0 * m);
    q += intra[c] / m - share * share;
  }
  return q;
}

double modularity(const ConfrontGraph& g, const CommunityPartition& p) {
  return modularity(UndirectedView(g), p.assignment);
}

CommunityPartition louvain(const UndirectedView& view, std::uint64_t seed) {
  CommunityPartition result;
  result.algorithm = "louvain";
  result.seed = seed;
  const std::size_t n = view.order();
  std::vector<std::uint32_t> membership(n);
  std::iota(membership.begin(), membership.end(), 1u);
  if (n == 0) return result;

  std::mt19937_64 rng(seed);
  WeightedGraph level = from_view(view);
  const double total_weight_x2 = 2.0 * static_cast<double>(view.edge_count());
  if (total_weight_x2 > 0.0) {
    while (true) {
      std::vector<std::size_t> community(level.order());
      std::iota(community.begin(), community.end(), 0);
      if (!local_moving(level, total_weight_x2, community, rng)) break;
      const auto labels = relabel(community);
      const std::size_t count = *std::max_element(labels.begin(), labels.end());
      for (auto& c : membership) c = labels[c - 1];
      result.level_modularity.push_back(modularity(view, relabel({membership.begin(), membership.end()})));
      if (count == level.order()) break;
      level = aggregate(level, labels, count);
    }
  }
  result.assignment = relabel({membership.begin(), membership.end()});
  result.modularity = modularity(view, result.assignment);
  return result;
}

CommunityPartition louvain(const ConfrontGraph& g, std::uint64_t seed) {
  return louvain(UndirectedView(g), seed);
}

CommunityPartition make_partition(const ConfrontGraph& g, const std::vector<std::uint32_t>& raw_ids,
                                  std::string algorithm) {
  if (raw_ids.size() != g.order()) {
    throw Error(ErrorCode::UncoveredVertex, "partition covers " + std::to_string(raw_ids.size()) +
                                                " of " + std::to_string(g.order()) + " vertices");
  }
  CommunityPartition p;
  p.algorithm = std::move(algorithm);
  p.assignment = relabel({raw_ids.begin(), raw_ids.end()});
  p.modularity = modularity(g, p);
  return p;
}

std::vector<CommunityStats> community_stats(const ConfrontGraph& g, const CommunityPartition& p) {
  if (p.assignment.size() != g.order()) {
    throw Error(ErrorCode::UncoveredVertex, "partition does not match the graph");
  }
  const std::size_t count = p.community_count();
  std::vector<CommunityStats> out(count);
  parallel_for(count, [&](std::size_t i) {
    const auto c = static_cast<std::uint32_t>(i + 1);
    std::vector<bool> keep(g.order());
    std::size_t size = 0;
    for (std::size_t v = 0; v < g.order(); ++v) {
      keep[v] = p.assignment[v] == c;
      size += keep[v] ? 1 : 0;
    }
    out[i] = {c, summarize(induced_subgraph(g, keep), size)};
  });
  return out;
}

CommunityNetwork community_network(const ConfrontGraph& g, const CommunityPartition& p) {
  if (p.assignment.size() != g.order()) {
    throw Error(ErrorCode::UncoveredVertex, "partition does not match the graph");
  }
  CommunityNetwork net;
  const std::size_t count = p.community_count();
  net.nodes.resize(count);
  for (std::size_t c = 0; c < count; ++c) net.nodes[c].community = static_cast<std::uint32_t>(c + 1);
  for (std::size_t v = 0; v < g.order(); ++v) {
    const Vertex& vertex = g.vertices()[v];
    CommunityNode& node = net.nodes[p.assignment[v] - 1];
    ++node.size;
    ++node.kinds[static_cast<std::size_t>(vertex.kind)];
    if (!vertex.is_property()) continue;
    ++node.parishes[vertex.parish.value_or("")];
    if (!vertex.inside_old_walls) {
      ++node.old_walls.unknown;
    } else if (*vertex.inside_old_walls) {
      ++node.old_walls.inside;
    } else {
      ++node.old_walls.outside;
    }
  }
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> weights;
  for (const auto& e : g.edges()) {
    const auto a = p.assignment[e.source];
    const auto b = p.assignment[e.target];
    if (a == b) {
      ++net.nodes[a - 1].intra_edges;
    } else {
      ++weights[{std::min(a, b), std::max(a, b)}];
    }
  }
  for (const auto& [pair, w] : weights) net.links.push_back({pair.first, pair.second, w});
  return net;
}

double size_gini(const CommunityPartition& p) {
  const std::size_t count = p.community_count();
  if (count == 0) return 0.0;
  std::vector<double> sizes(count, 0.0);
  for (auto c : p.assignment) sizes[c - 1] += 1.0;
  std::sort(sizes.begin(), sizes.end());
  double weighted = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    weighted += static_cast<double>(i + 1) * sizes[i];
    total += sizes[i];
  }
  const double k = static_cast<double>(count);
  return (2.0 * weighted) / (k * total) - (k + 1.0) / k;
}

}  // namespace confront

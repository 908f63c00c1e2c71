#include "confront/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "confront/error.hpp"
#include "confront/parallel.hpp"
#include "confront/spearman.hpp"

namespace confront {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr auto kNoSlot = static_cast<std::size_t>(-1);

void bfs_into(const UndirectedView& view, std::size_t source, std::uint32_t* dist,
              std::vector<std::uint32_t>& queue) {
  std::fill(dist, dist + view.order(), kInfiniteDistance);
  queue.clear();
  dist[source] = 0;
  queue.push_back(static_cast<std::uint32_t>(source));
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t v = queue[head];
    for (auto w : view.neighbors(v)) {
      if (dist[w] == kInfiniteDistance) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
}

struct Located {
  std::vector<std::size_t> vertices;
  std::vector<std::size_t> slot;  // vertex -> position in `vertices`, or kNoSlot

  std::size_t pair_count() const { return vertices.size() * (vertices.size() - 1) / 2; }
  std::size_t offset(std::size_t ci) const {
    const std::size_t nc = vertices.size();
    return ci * nc - ci * (ci + 1) / 2;
  }
};

Located locate(const ConfrontGraph& g) {
  Located loc;
  loc.slot.assign(g.order(), kNoSlot);
  for (std::size_t v = 0; v < g.order(); ++v) {
    if (g.vertices()[v].coord) {
      loc.slot[v] = loc.vertices.size();
      loc.vertices.push_back(v);
    }
  }
  return loc;
}

/// Per-source BFS results, gathered in parallel and reduced in source order
/// so that floating-point sums do not depend on scheduling.
struct PairScan {
  std::vector<std::uint32_t> max_finite;
  std::vector<double> inverse_sum;
  /// Hop distance per located pair (ci < cj), +inf when unreachable.
  std::vector<double> located_hops;

  std::uint32_t diameter() const {
    std::uint32_t best = 0;
    for (auto d : max_finite) best = std::max(best, d);
    return best;
  }
  double reciprocal_total() const {
    double total = 0.0;
    for (double s : inverse_sum) total += s;
    return total;
  }
};

PairScan scan(const UndirectedView& view, const Located* located) {
  const std::size_t n = view.order();
  PairScan out;
  out.max_finite.assign(n, 0);
  out.inverse_sum.assign(n, 0.0);
  if (located && located->vertices.size() >= 2) out.located_hops.assign(located->pair_count(), kInf);
  parallel_for(n, [&](std::size_t s) {
    std::vector<std::uint32_t> dist(n);
    std::vector<std::uint32_t> queue;
    queue.reserve(n);
    bfs_into(view, s, dist.data(), queue);
    std::uint32_t best = 0;
    double inv = 0.0;
    for (std::size_t t = s + 1; t < n; ++t) {
      if (dist[t] == kInfiniteDistance) continue;
      best = std::max(best, dist[t]);
      inv += 1.0 / static_cast<double>(dist[t]);
    }
    out.max_finite[s] = best;
    out.inverse_sum[s] = inv;
    if (!out.located_hops.empty() && located->slot[s] != kNoSlot) {
      const std::size_t ci = located->slot[s];
      const std::size_t base = located->offset(ci);
      for (std::size_t cj = ci + 1; cj < located->vertices.size(); ++cj) {
        const auto d = dist[located->vertices[cj]];
        out.located_hops[base + (cj - ci - 1)] = d == kInfiniteDistance ? kInf : static_cast<double>(d);
      }
    }
  });
  return out;
}

std::vector<double> located_space(const ConfrontGraph& g, const Located& loc) {
  std::vector<double> space;
  space.reserve(loc.pair_count());
  for (std::size_t ci = 0; ci < loc.vertices.size(); ++ci) {
    const Point& a = *g.vertices()[loc.vertices[ci]].coord;
    for (std::size_t cj = ci + 1; cj < loc.vertices.size(); ++cj) {
      space.push_back(euclidean(a, *g.vertices()[loc.vertices[cj]].coord));
    }
  }
  return space;
}

double harmonic_from(std::size_t n, double reciprocal_total) {
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  if (reciprocal_total == 0.0) return kInf;
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return pairs / reciprocal_total;
}

void require_located(const Located& loc) {
  if (loc.vertices.size() < 2) {
    throw Error(ErrorCode::InsufficientCoordinates,
                std::to_string(loc.vertices.size()) + " vertices carry coordinates, need 2");
  }
}

}  // namespace

std::vector<std::uint32_t> bfs_distances(const UndirectedView& view, std::size_t source) {
  std::vector<std::uint32_t> dist(view.order());
  std::vector<std::uint32_t> queue;
  bfs_into(view, source, dist.data(), queue);
  return dist;
}

DistanceTable all_pairs_graph_distance(const UndirectedView& view) {
  DistanceTable table(view.order());
  parallel_for(view.order(), [&](std::size_t s) {
    std::vector<std::uint32_t> queue;
    bfs_into(view, s, table.row(s), queue);
  });
  return table;
}

DistanceTable all_pairs_graph_distance(const ConfrontGraph& g) {
  return all_pairs_graph_distance(UndirectedView(g));
}

double density(std::size_t n, std::size_t m) {
  if (n < 2) return 0.0;
  return static_cast<double>(m) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

double density(const ConfrontGraph& g) { return density(g.order(), g.size()); }

std::uint32_t finite_diameter(const UndirectedView& view) {
  if (view.edge_count() == 0) throw Error(ErrorCode::NoFinitePairs, "graph has no connected pair");
  return scan(view, nullptr).diameter();
}

std::uint32_t finite_diameter(const ConfrontGraph& g) { return finite_diameter(UndirectedView(g)); }

double harmonic_mean_distance(const UndirectedView& view) {
  if (view.order() < 2) return std::numeric_limits<double>::quiet_NaN();
  return harmonic_from(view.order(), scan(view, nullptr).reciprocal_total());
}

double harmonic_mean_distance(const ConfrontGraph& g) {
  return harmonic_mean_distance(UndirectedView(g));
}

double spearman_distance_correlation(const ConfrontGraph& g) {
  const Located loc = locate(g);
  require_located(loc);
  const PairScan s = scan(UndirectedView(g), &loc);
  return spearman(s.located_hops, located_space(g, loc));
}

GraphSummary summarize(const ConfrontGraph& g, std::size_t property_baseline) {
  GraphSummary out;
  out.n = g.order();
  out.m = g.size();
  out.delta = density(out.n, out.m);
  out.property_count = g.property_count();
  out.property_coverage =
      property_baseline == 0 ? 0.0
                             : static_cast<double>(out.property_count) / static_cast<double>(property_baseline);
  if (g.empty()) return out;

  const UndirectedView view(g);
  connected_components(view, &out.components);
  const Located loc = locate(g);
  const PairScan s = scan(view, &loc);
  out.d_max = s.diameter();
  out.d_harm = out.n < 2 ? 0.0 : harmonic_from(out.n, s.reciprocal_total());
  if (loc.vertices.size() >= 2) {
    const double rho = spearman(s.located_hops, located_space(g, loc));
    if (!std::isnan(rho)) out.rho_d = rho;
  }
  return out;
}

DistanceProfile distance_profile(const ConfrontGraph& g) {
  const Located loc = locate(g);
  require_located(loc);
  const PairScan s = scan(UndirectedView(g), &loc);
  const auto space = located_space(g, loc);

  // key: hop count, with UINT32_MAX standing for unreachable so it sorts last
  std::map<std::uint32_t, std::vector<double>> groups;
  for (std::size_t p = 0; p < space.size(); ++p) {
    const double h = s.located_hops[p];
    const auto key = std::isinf(h) ? kInfiniteDistance : static_cast<std::uint32_t>(h);
    groups[key].push_back(space[p]);
  }
  DistanceProfile profile;
  for (const auto& [key, values] : groups) {
    DistanceBucket b;
    if (key != kInfiniteDistance) b.hops = key;
    b.count = values.size();
    double sum = 0.0;
    for (double v : values) sum += v;
    b.mean = sum / static_cast<double>(b.count);
    double sq = 0.0;
    for (double v : values) sq += (v - b.mean) * (v - b.mean);
    b.stddev = std::sqrt(sq / static_cast<double>(b.count));
    profile.buckets.push_back(b);
  }
  return profile;
}

}  // namespace confront

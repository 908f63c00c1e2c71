#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "confront/graph.hpp"

namespace confront {

inline constexpr std::uint32_t kInfiniteDistance = std::numeric_limits<std::uint32_t>::max();

/// Dense symmetric hop-count matrix; unreachable pairs hold kInfiniteDistance.
class DistanceTable {
 public:
  DistanceTable() = default;
  explicit DistanceTable(std::size_t n) : n_(n), data_(n * n, kInfiniteDistance) {}

  std::size_t order() const { return n_; }
  std::uint32_t at(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::uint32_t* row(std::size_t i) { return data_.data() + i * n_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint32_t> data_;
};

/// Hop counts from `source` on the undirected view.
std::vector<std::uint32_t> bfs_distances(const UndirectedView& view, std::size_t source);

DistanceTable all_pairs_graph_distance(const UndirectedView& view);
DistanceTable all_pairs_graph_distance(const ConfrontGraph& g);

/// m / (n (n - 1)); 0 when n < 2.
double density(std::size_t n, std::size_t m);
double density(const ConfrontGraph& g);

/// Largest finite distance between distinct vertices. Throws NoFinitePairs.
std::uint32_t finite_diameter(const UndirectedView& view);
std::uint32_t finite_diameter(const ConfrontGraph& g);

/// Pair count divided by the sum of reciprocal distances over unordered
/// distinct pairs, unreachable pairs contributing zero. Infinite when no
/// pair is connected; NaN when n < 2.
double harmonic_mean_distance(const UndirectedView& view);
double harmonic_mean_distance(const ConfrontGraph& g);

/// Spearman correlation between hop distance and Euclidean distance over the
/// unordered pairs of coordinate-bearing vertices; unreachable pairs share
/// the top rank. NaN when either side is constant. Throws
/// InsufficientCoordinates below two located vertices.
double spearman_distance_correlation(const ConfrontGraph& g);

struct GraphSummary {
  std::size_t n = 0;
  std::size_t m = 0;
  double delta = 0.0;
  std::size_t property_count = 0;
  double property_coverage = 0.0;
  std::size_t components = 0;
  /// 0 when no pair is connected.
  std::uint32_t d_max = 0;
  /// 0 when n < 2.
  double d_harm = 0.0;
  /// Absent below two located vertices or with a constant distance series.
  std::optional<double> rho_d;
};

GraphSummary summarize(const ConfrontGraph& g, std::size_t property_baseline);

struct DistanceBucket {
  /// Hop distance; absent for the unreachable bucket.
  std::optional<std::uint32_t> hops;
  std::size_t count = 0;
  double mean = 0.0;
  /// Population standard deviation, in meters.
  double stddev = 0.0;
};

struct DistanceProfile {
  /// Ordered by hops, unreachable bucket last.
  std::vector<DistanceBucket> buckets;
};

/// Groups located vertex pairs by hop distance. Throws InsufficientCoordinates.
DistanceProfile distance_profile(const ConfrontGraph& g);

}  // namespace confront

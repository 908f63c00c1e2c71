#pragma once

// Deliberately naive reference implementations. They share no code with the
// library and trade speed for obviousness.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace oracle {

inline constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

using EdgeList = std::vector<std::pair<std::size_t, std::size_t>>;

/// Hop distance between every ordered pair, one queue-based search per source
/// over a dense adjacency matrix.
std::vector<std::vector<std::uint32_t>> distances(std::size_t n, const EdgeList& edges);

/// P / sum of 1/d over unordered distinct pairs; 1/inf = 0.
double harmonic(const std::vector<std::vector<std::uint32_t>>& d);

/// rank_i = 1 + #{j : x_j < x_i} + (#{j != i : x_j == x_i}) / 2.
std::vector<double> ranks(const std::vector<double>& x);

/// Pearson correlation of the two rank vectors, computed with long double.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

struct Point2 {
  double a = 0.0;
  double b = 0.0;
};

/// Indices of the points no other point dominates (maximisation on both axes).
std::vector<std::size_t> pareto(const std::vector<Point2>& points);

/// Sum over ordered vertex pairs of (A_ij - k_i k_j / 2m) [c_i == c_j] / 2m on
/// the simple undirected graph given by `edges`.
double modularity(std::size_t n, const EdgeList& edges, const std::vector<std::uint32_t>& community);

/// Number of connected components, by union-find.
std::size_t components(std::size_t n, const EdgeList& edges);

}  // namespace oracle

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "confront/data_model.hpp"
#include "confront/method.hpp"
#include "confront/metrics.hpp"

namespace confront {

struct SweepPoint {
  std::size_t k = 0;
  /// Property vertices surviving the extraction.
  std::size_t coverage = 0;
  /// Distance correlation; NaN when undefined, which ranks below any value.
  double rho = 0.0;
  GraphSummary summary;
};

/// Extracts and summarizes `base` once per k, in input order. The base
/// scope must be TopK.
std::vector<SweepPoint> sweep_k(const Database& db, const ExtractionMethod& base,
                                std::span<const std::size_t> k_values);

/// True when `a` is at least as good as `b` on both objectives and strictly
/// better on one.
bool dominates(const SweepPoint& a, const SweepPoint& b);

/// Non-dominated points, by descending coverage then descending rho then
/// ascending k. Points tied on both objectives are all kept.
std::vector<SweepPoint> pareto_front(std::span<const SweepPoint> points);

/// Picks one point of the front; receives the front in pareto_front order
/// and returns an index into it.
using SelectionPolicy = std::function<std::size_t(std::span<const SweepPoint>)>;

/// Highest rho, smallest k on ties.
std::size_t max_rho_policy(std::span<const SweepPoint> front);

SweepPoint select_best(std::span<const SweepPoint> points,
                       const SelectionPolicy& policy = max_rho_policy);

/// 0..ceil(10% of the street count).
std::vector<std::size_t> default_k_range(const Database& db);

}  // namespace confront

#include "confront/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "confront/extract.hpp"
#include "confront/parallel.hpp"

namespace confront {

namespace {

double objective(double rho) {
  return std::isnan(rho) ? -std::numeric_limits<double>::infinity() : rho;
}

bool front_order(const SweepPoint& a, const SweepPoint& b) {
  if (a.coverage != b.coverage) return a.coverage > b.coverage;
  if (objective(a.rho) != objective(b.rho)) return objective(a.rho) > objective(b.rho);
  return a.k < b.k;
}

}  // namespace

std::vector<SweepPoint> sweep_k(const Database& db, const ExtractionMethod& base,
                                std::span<const std::size_t> k_values) {
  if (base.scope != Scope::TopK) throw std::invalid_argument("sweep_k needs a top-k method");
  std::vector<SweepPoint> points(k_values.size());
  parallel_for(k_values.size(), [&](std::size_t i) {
    ExtractionMethod method = base;
    method.k = k_values[i];
    const ConfrontGraph g = extract(db, method);
    SweepPoint& p = points[i];
    p.k = method.k;
    p.summary = summarize(g, db.property_baseline());
    p.coverage = p.summary.property_count;
    p.rho = p.summary.rho_d.value_or(std::numeric_limits<double>::quiet_NaN());
  });
  return points;
}

bool dominates(const SweepPoint& a, const SweepPoint& b) {
  const double ra = objective(a.rho);
  const double rb = objective(b.rho);
  return a.coverage >= b.coverage && ra >= rb && (a.coverage > b.coverage || ra > rb);
}

std::vector<SweepPoint> pareto_front(std::span<const SweepPoint> points) {
  std::vector<SweepPoint> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(), front_order);
  std::vector<SweepPoint> front;
  // best rho among strictly larger coverages seen so far
  double best_higher = -std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  bool first_group = true;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j].coverage == sorted[i].coverage) ++j;
    const double group_best = objective(sorted[i].rho);
    for (std::size_t p = i; p < j; ++p) {
      const double r = objective(sorted[p].rho);
      if (r == group_best && (first_group || r > best_higher)) front.push_back(sorted[p]);
    }
    best_higher = std::max(best_higher, group_best);
    first_group = false;
    i = j;
  }
  return front;
}

std::size_t max_rho_policy(std::span<const SweepPoint> front) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < front.size(); ++i) {
    const double r = objective(front[i].rho);
    const double rb = objective(front[best].rho);
    if (r > rb || (r == rb && front[i].k < front[best].k)) best = i;
  }
  return best;
}

SweepPoint select_best(std::span<const SweepPoint> points, const SelectionPolicy& policy) {
  if (points.empty()) throw std::invalid_argument("select_best needs at least one point");
  const auto front = pareto_front(points);
  const std::size_t pick = policy(front);
  if (pick >= front.size()) throw std::out_of_range("selection policy returned an invalid index");
  return front[pick];
}

std::vector<std::size_t> default_k_range(const Database& db) {
  const auto streets = static_cast<std::size_t>(std::count_if(
      db.objects().begin(), db.objects().end(),
      [](const SpatialObject& o) { return o.kind == ObjectKind::Street; }));
  // k cannot exceed the streets that can be ranked
  const std::size_t upper = std::min((streets + 9) / 10, streets_by_length(db).size());
  std::vector<std::size_t> ks(upper + 1);
  for (std::size_t k = 0; k <= upper; ++k) ks[k] = k;
  return ks;
}

}  // namespace confront

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "confront/data_model.hpp"
#include "confront/graph.hpp"
#include "confront/method.hpp"

namespace confront {

/// Counters gathered along an extraction run.
struct ExtractionReport {
  /// Relations re-pointed to the first available segment because they carry
  /// no (surviving) target_segment.
  std::size_t default_bindings = 0;
  std::size_t split_objects = 0;
  std::size_t removed_objects = 0;
  std::size_t pruned_segments = 0;
  std::size_t injected_additional = 0;
  /// Additional relations with an endpoint absent from the graph.
  std::size_t skipped_additional = 0;
  std::size_t removed_components = 0;
  std::size_t removed_component_vertices = 0;
};

/// One vertex per object involved in at least one primary relation and one
/// edge per normalized primary relation. Expects a merged database.
ConfrontGraph build_full_graph(const Database& db);

/// build_full_graph on the Egal-merged view of `db`.
ConfrontGraph full_graph(const Database& db);

/// Drops every InsideOf/OutsideOf edge; vertices are untouched.
ConfrontGraph filter_hierarchy(const ConfrontGraph& g);

/// Keeps, removes or splits the non-punctual vertices according to the
/// method scope, then prunes dangling segment leaves.
ConfrontGraph handle_nonpunctual(const ConfrontGraph& g, const Database& db,
                                 const ExtractionMethod& method, ExtractionReport* report = nullptr);

/// Adds the Additional-origin relations whose endpoints are present in `g`.
ConfrontGraph inject_additional(const ConfrontGraph& g, const Database& db,
                                ExtractionReport* report = nullptr);

/// Removes every weakly connected component smaller than `threshold`.
/// Throws EmptyResult when nothing survives.
ConfrontGraph filter_components(const ConfrontGraph& g, std::size_t threshold,
                                ExtractionReport* report = nullptr);

/// Full pipeline: full graph, hierarchy filter (F), non-punctual handling,
/// additional relations (E), component filter.
ConfrontGraph extract(const Database& db, const ExtractionMethod& method,
                      ExtractionReport* report = nullptr);

/// Streets carrying a length, longest first, ties by id.
std::vector<std::string> streets_by_length(const Database& db);

}  // namespace confront

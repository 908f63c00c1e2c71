#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>

#include "confront/community.hpp"
#include "confront/graph.hpp"

namespace confront {

/// Side information stored alongside a serialized graph.
struct GraphFileMeta {
  std::size_t property_baseline = 0;
  /// Hash of the run manifest that produced the file; empty when unknown.
  std::string manifest_hash;

  friend bool operator==(const GraphFileMeta&, const GraphFileMeta&) = default;
};

void write_graphml(std::ostream& out, const ConfrontGraph& g, const GraphFileMeta& meta);
void write_gexf(std::ostream& out, const ConfrontGraph& g, const GraphFileMeta& meta);

/// Quotient graph with node size/composition and link weight attributes.
void write_community_gexf(std::ostream& out, const CommunityNetwork& net,
                          const std::string& manifest_hash);

inline constexpr std::uint32_t kGraphCacheVersion = 1;

/// Versioned little-endian binary cache; reading checks magic and version.
void write_graph_cache(std::ostream& out, const ConfrontGraph& g, const GraphFileMeta& meta);
std::pair<ConfrontGraph, GraphFileMeta> read_graph_cache(std::istream& in);
std::pair<ConfrontGraph, GraphFileMeta> read_graph_cache(const std::filesystem::path& path);

/// Writes through a sibling temporary file renamed into place on success.
void write_atomically(const std::filesystem::path& path,
                      const std::function<void(std::ostream&)>& writer);

/// Shortest representation that round-trips.
std::string format_double(double value);

}  // namespace confront

#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>

#include "confront/data_model.hpp"

namespace confront {

enum class NormalizedType {
  NorthOf,
  SouthOf,
  EastOf,
  WestOf,
  InsideOf,
  OutsideOf,
  RelatedTo,
  /// Structural link between consecutive pieces of a split object.
  ArtificialAdjacency,
};

enum class HierarchyClass { Hierarchical, Flat };

std::string_view to_string(NormalizedType type);
std::optional<NormalizedType> parse_normalized_type(std::string_view text);

constexpr HierarchyClass hierarchy_class(NormalizedType type) {
  return (type == NormalizedType::InsideOf || type == NormalizedType::OutsideOf)
             ? HierarchyClass::Hierarchical
             : HierarchyClass::Flat;
}

/// One row of the raw-to-normalized mapping. Rows whose type does not depend
/// on the target carry only `others`. `street` applies when the target kind is
/// Street, `surface` when a non-street target is two-dimensional.
struct NormalizationRule {
  std::string_view raw;
  std::string_view translation;
  bool merge = false;
  std::optional<NormalizedType> street;
  std::optional<NormalizedType> surface;
  std::optional<NormalizedType> others;
};

inline constexpr std::string_view kNormalizationTableVersion = "1";
inline constexpr std::string_view kEqualityRawType = "Egal";

/// The 42 raw relation types in their canonical spelling.
std::span<const NormalizationRule> normalization_table();

bool is_raw_type(std::string_view raw);

/// Throws UnmappableType for "Egal" and unknown strings.
NormalizedType normalize_relation_type(std::string_view raw, const SpatialObject& target);

/// Unifies every Egal-connected class of objects into its lexicographically
/// smallest id, re-points the remaining relations and collapses duplicates.
/// Throws ConflictingMerge when a class mixes object kinds.
Database merge_equal_objects(const Database& db);

/// Writes the mapping as CSV: raw,translation,street,surface,others,merge.
void dump_normalization_table(std::ostream& out);

}  // namespace confront

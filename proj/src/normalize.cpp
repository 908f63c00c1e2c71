#include "confront/normalize.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>

#include "confront/csv.hpp"
#include "confront/error.hpp"

namespace confront {

namespace {

using NT = NormalizedType;

constexpr NormalizationRule fixed(std::string_view raw, std::string_view translation, NT type) {
  return NormalizationRule{raw, translation, false, std::nullopt, std::nullopt, type};
}

// Corner-of relations name only the street and 2D branches; punctual targets
// fall back to RelatedTo.
constexpr NormalizationRule corner(std::string_view raw) {
  return NormalizationRule{raw, "At the corner of...", false, NT::RelatedTo, NT::InsideOf,
                           NT::RelatedTo};
}

constexpr std::array<NormalizationRule, 42> kTable{{
    fixed("Iuxta", "Near...", NT::RelatedTo),
    fixed("Juxta", "Near...", NT::RelatedTo),
    fixed("Prope", "Near...", NT::RelatedTo),
    fixed("Proxime", "Near...", NT::RelatedTo),
    corner("In Angulo"),
    corner("In Cantono"),
    corner("In Compito Sive Cantono"),
    {"In Introytu", "At the entrance of...", false, NT::RelatedTo, std::nullopt, NT::InsideOf},
    fixed("Extra", "Outside of...", NT::OutsideOf),
    {"In", "Inside of...", false, std::nullopt, NT::InsideOf, NT::RelatedTo},
    {"Intra", "Inside of...", false, std::nullopt, NT::InsideOf, NT::RelatedTo},
    fixed("Ab Opposito", "Opposite to...", NT::RelatedTo),
    fixed("Ex Opposit", "Opposite to...", NT::RelatedTo),
    {"In Capite", "At the beginning of...", false, std::nullopt, NT::InsideOf, NT::RelatedTo},
    fixed("Super", "Above...", NT::RelatedTo),
    fixed("Supra", "Above...", NT::RelatedTo),
    fixed("A Orient", "West of...", NT::WestOf),
    fixed("A Occident", "East of...", NT::EastOf),
    fixed("A Circio", "South of...", NT::SouthOf),
    fixed("Ab Aura Recta", "South of...", NT::SouthOf),
    fixed("A Meridie", "North of...", NT::NorthOf),
    fixed("A Una Part", "One side facing...", NT::RelatedTo),
    fixed("Ab Una Part", "One side facing...", NT::RelatedTo),
    fixed("A Duabus Part", "Two sides facing...", NT::RelatedTo),
    fixed("A Tribus Part", "Three sides facing...", NT::RelatedTo),
    fixed("A Parte Retro", "Rear side facing...", NT::RelatedTo),
    fixed("A Part Ante", "Front side facing...", NT::RelatedTo),
    fixed("A Part Inferiori", "Lower side facing...", NT::RelatedTo),
    fixed("A Parte Lateris", "Lateral side facing...", NT::RelatedTo),
    fixed("A Part Posteriori", "Rear side facing...", NT::RelatedTo),
    fixed("Sive Ab Una Part", "One side may face...", NT::RelatedTo),
    fixed("Conjuncto", "Adjacent to...", NT::RelatedTo),
    fixed("Contigu", "Adjacent to...", NT::RelatedTo),
    fixed("Contiguo", "Adjacent to...", NT::RelatedTo),
    fixed("Retro", "Behind...", NT::RelatedTo),
    fixed("Ante", "Before...", NT::RelatedTo),
    {"Egal", "Same as...", true, std::nullopt, std::nullopt, std::nullopt},
    fixed("Infra", "Below...", NT::RelatedTo),
    fixed("Subtus", "Below...", NT::RelatedTo),
    fixed("Ad", "Towards...", NT::RelatedTo),
    fixed("Apud", "Towards...", NT::RelatedTo),
    fixed("Versus", "Towards...", NT::RelatedTo),
}};

const NormalizationRule* find_rule(std::string_view raw) {
  const auto it = std::find_if(kTable.begin(), kTable.end(),
                               [&](const NormalizationRule& r) { return r.raw == raw; });
  return it == kTable.end() ? nullptr : &*it;
}

constexpr std::array<std::string_view, 8> kTypeNames{
    "NorthOf", "SouthOf", "EastOf", "WestOf", "InsideOf", "OutsideOf", "RelatedTo",
    "ArtificialAdjacency"};

struct DisjointSets {
  std::vector<std::size_t> parent;

  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

std::string_view to_string(NormalizedType type) {
  return kTypeNames[static_cast<std::size_t>(type)];
}

std::optional<NormalizedType> parse_normalized_type(std::string_view text) {
  for (std::size_t i = 0; i < kTypeNames.size(); ++i) {
    if (kTypeNames[i] == text) return static_cast<NormalizedType>(i);
  }
  return std::nullopt;
}

std::span<const NormalizationRule> normalization_table() { return kTable; }

bool is_raw_type(std::string_view raw) { return find_rule(raw) != nullptr; }

NormalizedType normalize_relation_type(std::string_view raw, const SpatialObject& target) {
  const NormalizationRule* rule = find_rule(raw);
  if (rule == nullptr) {
    throw Error(ErrorCode::UnmappableType, "unknown raw relation type '" + std::string(raw) + "'");
  }
  if (rule->merge) {
    throw Error(ErrorCode::UnmappableType,
                "'" + std::string(raw) + "' denotes object equality and is resolved by merging");
  }
  if (target.kind == ObjectKind::Street) {
    if (rule->street) return *rule->street;
  } else if (target.dim == Dimensionality::Surface && rule->surface) {
    return *rule->surface;
  }
  return *rule->others;
}

Database merge_equal_objects(const Database& db) {
  const auto& objects = db.objects();
  DisjointSets sets(objects.size());
  bool any = false;
  for (const auto& r : db.relations()) {
    if (r.raw_type != kEqualityRawType) continue;
    any = true;
    sets.unite(*db.index_of(r.source_id), *db.index_of(r.target_id));
  }
  if (!any) return db;

  // canonical member of each class: smallest id, independent of input order
  std::vector<std::vector<std::size_t>> members(objects.size());
  for (std::size_t i = 0; i < objects.size(); ++i) members[sets.find(i)].push_back(i);
  std::vector<std::size_t> canonical(objects.size());
  for (auto& group : members) {
    if (group.empty()) continue;
    std::sort(group.begin(), group.end(),
              [&](std::size_t a, std::size_t b) { return objects[a].id < objects[b].id; });
    for (std::size_t m : group) {
      if (objects[m].kind != objects[group.front()].kind) {
        throw Error(ErrorCode::ConflictingMerge,
                    "Egal links '" + objects[group.front()].id + "' (" +
                        std::string(to_string(objects[group.front()].kind)) + ") and '" +
                        objects[m].id + "' (" + std::string(to_string(objects[m].kind)) + ")");
      }
      canonical[m] = group.front();
    }
  }

  std::vector<SpatialObject> merged;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (canonical[i] != i) continue;
    SpatialObject obj = objects[i];
    // fill unset optional attributes from the other members, in id order
    for (std::size_t m : members[sets.find(i)]) {
      const auto& other = objects[m];
      if (!obj.coord) obj.coord = other.coord;
      if (!obj.length_m) obj.length_m = other.length_m;
      if (!obj.parish) obj.parish = other.parish;
      if (!obj.inside_old_walls) obj.inside_old_walls = other.inside_old_walls;
      if (!obj.declared) obj.declared = other.declared;
      if (obj.segments.empty()) obj.segments = other.segments;
    }
    merged.push_back(std::move(obj));
  }

  std::unordered_map<std::string, std::size_t> merged_index;
  for (std::size_t i = 0; i < merged.size(); ++i) merged_index.emplace(merged[i].id, i);

  std::vector<RelationRecord> relations;
  std::set<std::tuple<std::string, std::string, std::string, Origin, std::optional<std::string>>>
      seen;
  for (const auto& r : db.relations()) {
    if (r.raw_type == kEqualityRawType) continue;
    RelationRecord out = r;
    out.source_id = objects[canonical[*db.index_of(r.source_id)]].id;
    out.target_id = objects[canonical[*db.index_of(r.target_id)]].id;
    if (out.source_id == out.target_id) continue;
    if (out.target_segment && out.target_id != r.target_id) {
      // the segment belonged to a merged-away surface form
      if (merged[merged_index.at(out.target_id)].find_segment(*out.target_segment) == nullptr) {
        out.target_segment.reset();
      }
    }
    auto key = std::make_tuple(out.source_id, out.target_id, out.raw_type, out.origin,
                               out.target_segment);
    if (!seen.insert(std::move(key)).second) continue;
    relations.push_back(std::move(out));
  }
  return make_database(std::move(merged), std::move(relations));
}

void dump_normalization_table(std::ostream& out) {
  out << "# normalization table version " << kNormalizationTableVersion << '\n';
  csv::write_row(out, {"raw", "translation", "street", "surface", "others", "merge"});
  auto name = [](const std::optional<NormalizedType>& t) {
    return t ? std::string(to_string(*t)) : std::string();
  };
  for (const auto& rule : kTable) {
    csv::write_row(out, {std::string(rule.raw), std::string(rule.translation), name(rule.street),
                         name(rule.surface), name(rule.others), rule.merge ? "true" : "false"});
  }
}

}  // namespace confront

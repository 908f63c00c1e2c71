#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace confront {

enum class ObjectKind {
  Property,
  ParishOrSector,
  Borough,
  DefensiveSystem,
  Gate,
  Livery,
  GeologicalLandmark,
  Street,
  Edifice,
};

inline constexpr std::size_t kObjectKindCount = 9;

enum class Dimensionality { Punctual, Linear, Surface };

enum class Origin { Primary, Additional };

std::string_view to_string(ObjectKind kind);
std::string_view to_string(Dimensionality dim);
std::string_view to_string(Origin origin);
std::optional<ObjectKind> parse_object_kind(std::string_view text);
std::optional<Dimensionality> parse_dimensionality(std::string_view text);
std::optional<Origin> parse_origin(std::string_view text);

/// Planar projected coordinates, in meters.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double euclidean(const Point& a, const Point& b);

/// One piece of a splittable (linear or surface) object.
struct Segment {
  std::string id;
  std::optional<Point> coord;

  friend bool operator==(const Segment&, const Segment&) = default;
};

struct SpatialObject {
  std::string id;
  std::string name;
  ObjectKind kind = ObjectKind::Property;
  Dimensionality dim = Dimensionality::Punctual;
  std::optional<Point> coord;
  std::optional<double> length_m;
  std::optional<std::string> parish;
  std::optional<bool> inside_old_walls;
  /// Only carried by Property objects.
  std::optional<bool> declared;
  /// Declared order; empty when the object cannot be split.
  std::vector<Segment> segments;

  bool is_punctual() const { return dim == Dimensionality::Punctual; }
  const Segment* find_segment(std::string_view segment_id) const;

  friend bool operator==(const SpatialObject&, const SpatialObject&) = default;
};

struct RelationRecord {
  std::string id;
  std::string source_id;
  std::string target_id;
  std::string raw_type;
  Origin origin = Origin::Primary;
  std::optional<std::string> target_segment;

  friend bool operator==(const RelationRecord&, const RelationRecord&) = default;
};

/// Immutable, validated collection of objects and relations. Build through
/// make_database() or load_database().
class Database {
 public:
  Database() = default;

  const std::vector<SpatialObject>& objects() const { return objects_; }
  const std::vector<RelationRecord>& relations() const { return relations_; }

  /// Number of Property vertices in the unfiltered full graph; denominator of
  /// property coverage.
  std::size_t property_baseline() const { return property_baseline_; }

  const SpatialObject* find(std::string_view id) const;
  std::optional<std::size_t> index_of(std::string_view id) const;

  friend bool operator==(const Database& a, const Database& b) {
    return a.objects_ == b.objects_ && a.relations_ == b.relations_ &&
           a.property_baseline_ == b.property_baseline_;
  }

 private:
  friend Database make_database(std::vector<SpatialObject>, std::vector<RelationRecord>);

  std::vector<SpatialObject> objects_;
  std::vector<RelationRecord> relations_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t property_baseline_ = 0;
};

/// Validates every object and relation invariant and computes the property
/// baseline. Throws Error on the first violation.
Database make_database(std::vector<SpatialObject> objects, std::vector<RelationRecord> relations);

/// Loads `objects` and `relations` (CSV or JSON, chosen by extension) plus an
/// optional companion segments CSV.
Database load_database(const std::filesystem::path& objects_path,
                       const std::filesystem::path& relations_path,
                       const std::optional<std::filesystem::path>& segments_path = std::nullopt);

/// Writes objects.csv, relations.csv and segments.csv into `dir`.
void save_database_csv(const Database& db, const std::filesystem::path& dir);

enum class WarningKind { Isolate, MissingLength, UnassignedSegment };

struct Warning {
  WarningKind kind;
  std::string subject_id;
  std::string message;
};

std::vector<Warning> validate_database(const Database& db);

}  // namespace confront

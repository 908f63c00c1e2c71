#include "confront/data_model.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "confront/csv.hpp"
#include "confront/error.hpp"
#include "confront/normalize.hpp"

namespace confront {

namespace {

constexpr std::array<std::string_view, kObjectKindCount> kKindNames{
    "Property", "ParishOrSector",     "Borough", "DefensiveSystem", "Gate",
    "Livery",   "GeologicalLandmark", "Street",  "Edifice"};
constexpr std::array<std::string_view, 3> kDimNames{"Punctual", "Linear", "Surface"};
constexpr std::array<std::string_view, 2> kOriginNames{"Primary", "Additional"};

template <std::size_t N>
std::optional<std::size_t> lookup(const std::array<std::string_view, N>& names,
                                  std::string_view text) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == text) return i;
  }
  return std::nullopt;
}

[[noreturn]] void malformed(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::MalformedRecord, where + ": " + what);
}

std::optional<double> parse_number(const std::string& text, const std::string& where,
                                   std::string_view field) {
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    malformed(where, "field '" + std::string(field) + "' is not a finite number: '" + text + "'");
  }
  return value;
}

std::optional<bool> parse_flag(const std::string& text, const std::string& where,
                               std::string_view field) {
  if (text.empty()) return std::nullopt;
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  malformed(where, "field '" + std::string(field) + "' is not a boolean: '" + text + "'");
}

std::optional<std::string> optional_text(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return text;
}

std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

bool dim_allowed(ObjectKind kind, Dimensionality dim) {
  switch (kind) {
    case ObjectKind::ParishOrSector:
    case ObjectKind::Borough:
    case ObjectKind::Livery:
      return dim == Dimensionality::Surface;
    case ObjectKind::DefensiveSystem:
      return dim == Dimensionality::Linear;
    case ObjectKind::Gate:
    case ObjectKind::Property:
      return dim == Dimensionality::Punctual;
    default:
      return true;
  }
}

void check_object(const SpatialObject& obj) {
  const std::string where = "object '" + obj.id + "'";
  if (obj.id.empty()) malformed("object", "empty id");
  if (!dim_allowed(obj.kind, obj.dim)) {
    malformed(where, std::string(to_string(obj.kind)) + " cannot be " +
                         std::string(to_string(obj.dim)));
  }
  if (obj.length_m && !(*obj.length_m > 0.0 && std::isfinite(*obj.length_m))) {
    malformed(where, "length_m must be > 0");
  }
  if (obj.coord && !(std::isfinite(obj.coord->x) && std::isfinite(obj.coord->y))) {
    malformed(where, "non-finite coordinates");
  }
  if (obj.kind == ObjectKind::Property && !obj.declared) {
    malformed(where, "property lacks the declared flag");
  }
  if (obj.kind != ObjectKind::Property && obj.declared) {
    malformed(where, "declared flag set on a non-property object");
  }
  if (!obj.segments.empty()) {
    if (obj.segments.size() < 2) malformed(where, "fewer than 2 segments");
    if (obj.is_punctual()) malformed(where, "punctual objects cannot carry segments");
    std::set<std::string_view> ids;
    for (const auto& s : obj.segments) {
      if (s.id.empty()) malformed(where, "empty segment id");
      if (!ids.insert(s.id).second) malformed(where, "duplicate segment id '" + s.id + "'");
      if (s.coord && !(std::isfinite(s.coord->x) && std::isfinite(s.coord->y))) {
        malformed(where, "non-finite coordinates on segment '" + s.id + "'");
      }
    }
  }
}

bool street_or_edifice(ObjectKind k) {
  return k == ObjectKind::Street || k == ObjectKind::Edifice;
}

// Properties reachable through at least one primary relation once Egal classes
// are merged; the merged database carries no Egal relation.
std::size_t count_full_graph_properties(const std::vector<SpatialObject>& objects,
                                        const std::vector<RelationRecord>& relations,
                                        const std::unordered_map<std::string, std::size_t>& index) {
  std::vector<bool> linked(objects.size(), false);
  for (const auto& r : relations) {
    if (r.origin != Origin::Primary || r.raw_type == kEqualityRawType) continue;
    linked[index.at(r.source_id)] = true;
    linked[index.at(r.target_id)] = true;
  }
  std::size_t count = 0;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (linked[i] && objects[i].kind == ObjectKind::Property) ++count;
  }
  return count;
}

}  // namespace

std::string_view to_string(ObjectKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }
std::string_view to_string(Dimensionality dim) { return kDimNames[static_cast<std::size_t>(dim)]; }
std::string_view to_string(Origin origin) { return kOriginNames[static_cast<std::size_t>(origin)]; }

std::optional<ObjectKind> parse_object_kind(std::string_view text) {
  if (auto i = lookup(kKindNames, text)) return static_cast<ObjectKind>(*i);
  return std::nullopt;
}

std::optional<Dimensionality> parse_dimensionality(std::string_view text) {
  if (auto i = lookup(kDimNames, text)) return static_cast<Dimensionality>(*i);
  return std::nullopt;
}

std::optional<Origin> parse_origin(std::string_view text) {
  if (auto i = lookup(kOriginNames, text)) return static_cast<Origin>(*i);
  return std::nullopt;
}

double euclidean(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

const Segment* SpatialObject::find_segment(std::string_view segment_id) const {
  const auto it = std::find_if(segments.begin(), segments.end(),
                               [&](const Segment& s) { return s.id == segment_id; });
  return it == segments.end() ? nullptr : &*it;
}

const SpatialObject* Database::find(std::string_view id) const {
  const auto i = index_of(id);
  return i ? &objects_[*i] : nullptr;
}

std::optional<std::size_t> Database::index_of(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Database make_database(std::vector<SpatialObject> objects, std::vector<RelationRecord> relations) {
  Database db;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    check_object(objects[i]);
    if (!db.index_.emplace(objects[i].id, i).second) {
      throw Error(ErrorCode::DuplicateId, "object id '" + objects[i].id + "' appears twice");
    }
  }

  std::unordered_set<std::string> relation_ids;
  bool has_equality = false;
  for (const auto& r : relations) {
    const std::string where = "relation '" + r.id + "'";
    if (r.id.empty()) malformed("relation", "empty id");
    if (!relation_ids.insert(r.id).second) {
      throw Error(ErrorCode::DuplicateId, "relation id '" + r.id + "' appears twice");
    }
    if (!is_raw_type(r.raw_type)) {
      throw Error(ErrorCode::UnknownRawType, where + ": unknown raw type '" + r.raw_type + "'");
    }
    for (const auto* endpoint : {&r.source_id, &r.target_id}) {
      if (!db.index_.contains(*endpoint)) {
        throw Error(ErrorCode::DanglingEndpoint, where + " references missing object '" +
                                                     *endpoint + "'");
      }
    }
    if (r.source_id == r.target_id) malformed(where, "self-loop on '" + r.source_id + "'");
    const auto& source = objects[db.index_.at(r.source_id)];
    const auto& target = objects[db.index_.at(r.target_id)];
    if (r.origin == Origin::Additional) {
      const bool ok = (source.kind == ObjectKind::Street && street_or_edifice(target.kind)) ||
                      (target.kind == ObjectKind::Street && street_or_edifice(source.kind));
      if (!ok) malformed(where, "additional relations must join street-street or edifice-street");
    }
    if (r.target_segment && target.find_segment(*r.target_segment) == nullptr) {
      throw Error(ErrorCode::DanglingEndpoint, where + " references missing segment '" +
                                                   *r.target_segment + "' of '" + target.id + "'");
    }
    has_equality = has_equality || r.raw_type == kEqualityRawType;
  }

  db.objects_ = std::move(objects);
  db.relations_ = std::move(relations);
  if (has_equality) {
    db.property_baseline_ = merge_equal_objects(db).property_baseline();
  } else {
    db.property_baseline_ = count_full_graph_properties(db.objects_, db.relations_, db.index_);
  }
  return db;
}

namespace {

std::vector<SpatialObject> read_objects_csv(std::istream& in, const std::string& name) {
  csv::Table table(in, name,
                   {"id", "name", "kind", "dim", "x", "y", "length_m", "parish", "inside_old_walls",
                    "declared"});
  std::vector<SpatialObject> objects;
  while (table.next()) {
    const std::string where = name + " line " + std::to_string(table.line());
    SpatialObject obj;
    obj.id = table.get("id");
    obj.name = table.get("name");
    const auto kind = parse_object_kind(table.get("kind"));
    if (!kind) malformed(where, "unknown kind '" + table.get("kind") + "'");
    obj.kind = *kind;
    const auto dim = parse_dimensionality(table.get("dim"));
    if (!dim) malformed(where, "unknown dim '" + table.get("dim") + "'");
    obj.dim = *dim;
    const auto x = parse_number(table.get("x"), where, "x");
    const auto y = parse_number(table.get("y"), where, "y");
    if (x.has_value() != y.has_value()) malformed(where, "x and y must be both set or both empty");
    if (x) obj.coord = Point{*x, *y};
    obj.length_m = parse_number(table.get("length_m"), where, "length_m");
    obj.parish = optional_text(table.get("parish"));
    obj.inside_old_walls = parse_flag(table.get("inside_old_walls"), where, "inside_old_walls");
    obj.declared = parse_flag(table.get("declared"), where, "declared");
    objects.push_back(std::move(obj));
  }
  return objects;
}

void read_segments_csv(std::istream& in, const std::string& name,
                       std::vector<SpatialObject>& objects) {
  csv::Table table(in, name, {"object_id", "segment_id", "order", "x", "y"});
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < objects.size(); ++i) index.emplace(objects[i].id, i);
  std::map<std::size_t, std::vector<std::pair<double, Segment>>> pending;
  while (table.next()) {
    const std::string where = name + " line " + std::to_string(table.line());
    const auto it = index.find(table.get("object_id"));
    if (it == index.end()) {
      throw Error(ErrorCode::DanglingEndpoint,
                  where + ": segment of missing object '" + table.get("object_id") + "'");
    }
    const auto order = parse_number(table.get("order"), where, "order");
    if (!order) malformed(where, "missing order");
    Segment seg;
    seg.id = table.get("segment_id");
    const auto x = parse_number(table.get("x"), where, "x");
    const auto y = parse_number(table.get("y"), where, "y");
    if (x.has_value() != y.has_value()) malformed(where, "x and y must be both set or both empty");
    if (x) seg.coord = Point{*x, *y};
    pending[it->second].emplace_back(*order, std::move(seg));
  }
  for (auto& [i, segs] : pending) {
    std::stable_sort(segs.begin(), segs.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [order, seg] : segs) objects[i].segments.push_back(std::move(seg));
  }
}

std::vector<RelationRecord> read_relations_csv(std::istream& in, const std::string& name) {
  csv::Table table(in, name, {"id", "source_id", "target_id", "raw_type", "origin", "target_segment"});
  std::vector<RelationRecord> relations;
  while (table.next()) {
    const std::string where = name + " line " + std::to_string(table.line());
    RelationRecord r;
    r.id = table.get("id");
    r.source_id = table.get("source_id");
    r.target_id = table.get("target_id");
    r.raw_type = table.get("raw_type");
    const auto origin = parse_origin(table.get("origin"));
    if (!origin) malformed(where, "unknown origin '" + table.get("origin") + "'");
    r.origin = *origin;
    r.target_segment = optional_text(table.get("target_segment"));
    if (!is_raw_type(r.raw_type)) {
      throw Error(ErrorCode::UnknownRawType, where + ": unknown raw type '" + r.raw_type + "'");
    }
    relations.push_back(std::move(r));
  }
  return relations;
}

using nlohmann::json;

template <typename T>
std::optional<T> json_optional(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

std::optional<Point> json_point(const json& j) {
  const auto x = json_optional<double>(j, "x");
  const auto y = json_optional<double>(j, "y");
  if (x.has_value() != y.has_value()) {
    throw Error(ErrorCode::MalformedRecord, "x and y must be both set or both absent");
  }
  if (!x) return std::nullopt;
  return Point{*x, *y};
}

std::vector<SpatialObject> read_objects_json(const json& doc, const std::string& name) {
  const json& list = doc.is_object() ? doc.at("objects") : doc;
  std::vector<SpatialObject> objects;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const json& j = list[i];
    const std::string where = name + " object #" + std::to_string(i);
    try {
      SpatialObject obj;
      obj.id = j.at("id").get<std::string>();
      obj.name = j.value("name", std::string());
      const auto kind = parse_object_kind(j.at("kind").get<std::string>());
      if (!kind) malformed(where, "unknown kind");
      obj.kind = *kind;
      const auto dim = parse_dimensionality(j.at("dim").get<std::string>());
      if (!dim) malformed(where, "unknown dim");
      obj.dim = *dim;
      obj.coord = json_point(j);
      obj.length_m = json_optional<double>(j, "length_m");
      obj.parish = json_optional<std::string>(j, "parish");
      obj.inside_old_walls = json_optional<bool>(j, "inside_old_walls");
      obj.declared = json_optional<bool>(j, "declared");
      if (const auto it = j.find("segments"); it != j.end()) {
        for (const json& s : *it) {
          obj.segments.push_back(Segment{s.at("id").get<std::string>(), json_point(s)});
        }
      }
      objects.push_back(std::move(obj));
    } catch (const json::exception& e) {
      malformed(where, e.what());
    }
  }
  return objects;
}

std::vector<RelationRecord> read_relations_json(const json& doc, const std::string& name) {
  const json& list = doc.is_object() ? doc.at("relations") : doc;
  std::vector<RelationRecord> relations;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const json& j = list[i];
    const std::string where = name + " relation #" + std::to_string(i);
    try {
      RelationRecord r;
      r.id = j.at("id").get<std::string>();
      r.source_id = j.at("source_id").get<std::string>();
      r.target_id = j.at("target_id").get<std::string>();
      r.raw_type = j.at("raw_type").get<std::string>();
      const auto origin = parse_origin(j.value("origin", std::string("Primary")));
      if (!origin) malformed(where, "unknown origin");
      r.origin = *origin;
      r.target_segment = json_optional<std::string>(j, "target_segment");
      relations.push_back(std::move(r));
    } catch (const json::exception& e) {
      malformed(where, e.what());
    }
  }
  return relations;
}

bool is_json(const std::filesystem::path& p) { return p.extension() == ".json"; }

std::ifstream open_input(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read '" + p.string() + "'");
  return in;
}

json parse_json(const std::filesystem::path& p) {
  auto in = open_input(p);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedRecord, p.string() + ": " + e.what());
  }
}

}  // namespace

Database load_database(const std::filesystem::path& objects_path,
                       const std::filesystem::path& relations_path,
                       const std::optional<std::filesystem::path>& segments_path) {
  std::vector<SpatialObject> objects;
  if (is_json(objects_path)) {
    objects = read_objects_json(parse_json(objects_path), objects_path.filename().string());
  } else {
    auto in = open_input(objects_path);
    objects = read_objects_csv(in, objects_path.filename().string());
  }
  if (segments_path) {
    auto in = open_input(*segments_path);
    read_segments_csv(in, segments_path->filename().string(), objects);
  }
  std::vector<RelationRecord> relations;
  if (is_json(relations_path)) {
    relations = read_relations_json(parse_json(relations_path), relations_path.filename().string());
  } else {
    auto in = open_input(relations_path);
    relations = read_relations_csv(in, relations_path.filename().string());
  }
  return make_database(std::move(objects), std::move(relations));
}

void save_database_csv(const Database& db, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto opt_num = [](const std::optional<double>& v) { return v ? format_number(*v) : ""; };
  auto opt_flag = [](const std::optional<bool>& v) {
    return v ? std::string(*v ? "true" : "false") : std::string();
  };

  std::ofstream objects(dir / "objects.csv", std::ios::binary);
  std::ofstream segments(dir / "segments.csv", std::ios::binary);
  csv::write_row(objects, {"id", "name", "kind", "dim", "x", "y", "length_m", "parish",
                           "inside_old_walls", "declared"});
  csv::write_row(segments, {"object_id", "segment_id", "order", "x", "y"});
  for (const auto& o : db.objects()) {
    csv::write_row(objects,
                   {o.id, o.name, std::string(to_string(o.kind)), std::string(to_string(o.dim)),
                    o.coord ? format_number(o.coord->x) : "", o.coord ? format_number(o.coord->y) : "",
                    opt_num(o.length_m), o.parish.value_or(""), opt_flag(o.inside_old_walls),
                    opt_flag(o.declared)});
    for (std::size_t i = 0; i < o.segments.size(); ++i) {
      const auto& s = o.segments[i];
      csv::write_row(segments, {o.id, s.id, std::to_string(i),
                                s.coord ? format_number(s.coord->x) : "",
                                s.coord ? format_number(s.coord->y) : ""});
    }
  }

  std::ofstream relations(dir / "relations.csv", std::ios::binary);
  csv::write_row(relations, {"id", "source_id", "target_id", "raw_type", "origin", "target_segment"});
  for (const auto& r : db.relations()) {
    csv::write_row(relations, {r.id, r.source_id, r.target_id, r.raw_type,
                               std::string(to_string(r.origin)), r.target_segment.value_or("")});
  }
  if (!objects || !segments || !relations) {
    throw Error(ErrorCode::Io, "failed writing database to '" + dir.string() + "'");
  }
}

std::vector<Warning> validate_database(const Database& db) {
  std::vector<Warning> warnings;
  std::vector<std::size_t> degree(db.objects().size(), 0);
  for (const auto& r : db.relations()) {
    ++degree[*db.index_of(r.source_id)];
    ++degree[*db.index_of(r.target_id)];
    const SpatialObject* target = db.find(r.target_id);
    if (!target->segments.empty() && !r.target_segment) {
      warnings.push_back({WarningKind::UnassignedSegment, r.id,
                          "relation '" + r.id + "' targets split object '" + target->id +
                              "' without a target_segment; binds to the first segment"});
    }
  }
  for (std::size_t i = 0; i < db.objects().size(); ++i) {
    const auto& o = db.objects()[i];
    if (degree[i] == 0) {
      warnings.push_back({WarningKind::Isolate, o.id, "object '" + o.id + "' has no relations"});
    }
    if (o.kind == ObjectKind::Street && o.dim == Dimensionality::Linear && !o.length_m) {
      warnings.push_back({WarningKind::MissingLength, o.id,
                          "linear street '" + o.id + "' has no length_m"});
    }
  }
  return warnings;
}

}  // namespace confront

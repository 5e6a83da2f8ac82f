#include "roadaccess/ingest.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "json.hpp"
#include "roadaccess/errors.hpp"
#include "text_format.hpp"

namespace roadaccess {

using nlohmann::json;

namespace {

PlanePoint project_position(const json& pos) {
  if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number()) {
    throw std::invalid_argument("position is not [lon, lat]");
  }
  const GeoPoint g{pos[0].get<double>(), pos[1].get<double>()};
  if (!is_valid(g)) throw std::invalid_argument("coordinate outside lon/lat range");
  return project_forward(g);
}

std::vector<PlanePoint> project_positions(const json& arr) {
  if (!arr.is_array()) throw std::invalid_argument("coordinate list is not an array");
  std::vector<PlanePoint> pts;
  pts.reserve(arr.size());
  for (const auto& pos : arr) pts.push_back(project_position(pos));
  return pts;
}

Polygon polygon_from_rings(const json& rings) {
  if (!rings.is_array() || rings.empty()) throw std::invalid_argument("polygon has no rings");
  std::vector<std::vector<PlanePoint>> holes;
  for (std::size_t k = 1; k < rings.size(); ++k) holes.push_back(project_positions(rings[k]));
  return Polygon(project_positions(rings[0]), std::move(holes));
}

// Polygon parts of a Polygon/MultiPolygon geometry object.
std::vector<Polygon> polygons_of(const json& geom) {
  if (!geom.is_object()) throw std::invalid_argument("missing geometry");
  const std::string type = geom.value("type", "");
  const json& coords = geom.at("coordinates");
  std::vector<Polygon> parts;
  if (type == "Polygon") {
    parts.push_back(polygon_from_rings(coords));
  } else if (type == "MultiPolygon") {
    if (!coords.is_array()) throw std::invalid_argument("MultiPolygon coordinates not an array");
    for (const auto& p : coords) parts.push_back(polygon_from_rings(p));
  } else {
    throw std::invalid_argument("unsupported geometry type '" + type + "'");
  }
  return parts;
}

std::vector<Polyline> lines_of(const json& geom) {
  if (!geom.is_object()) throw std::invalid_argument("missing geometry");
  const std::string type = geom.value("type", "");
  const json& coords = geom.at("coordinates");
  std::vector<Polyline> parts;
  if (type == "LineString") {
    parts.emplace_back(project_positions(coords));
  } else if (type == "MultiLineString") {
    if (!coords.is_array()) throw std::invalid_argument("MultiLineString coordinates not an array");
    for (const auto& line : coords) parts.emplace_back(project_positions(line));
  } else {
    throw std::invalid_argument("unsupported geometry type '" + type + "'");
  }
  return parts;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw DataError(std::string("invalid JSON: ") + e.what());
  }
}

// Features of a FeatureCollection or a lone Feature.
std::vector<json> features_of(const json& doc) {
  if (!doc.is_object()) throw DataError("GeoJSON root is not an object");
  const std::string type = doc.value("type", "");
  if (type == "FeatureCollection") {
    const auto it = doc.find("features");
    if (it == doc.end() || !it->is_array()) throw DataError("FeatureCollection without features");
    return it->get<std::vector<json>>();
  }
  if (type == "Feature") return {doc};
  throw DataError("GeoJSON root must be a FeatureCollection or Feature");
}

const json* property(const json& feature, const std::string& name) {
  const auto props = feature.find("properties");
  if (props == feature.end() || !props->is_object()) return nullptr;
  const auto it = props->find(name);
  if (it == props->end() || it->is_null()) return nullptr;
  return &*it;
}

std::optional<double> numeric_property(const json& feature, const std::string& name) {
  const json* v = property(feature, name);
  if (v == nullptr) return std::nullopt;
  if (v->is_number()) return v->get<double>();
  if (v->is_string()) return detail::parse_double(v->get<std::string>());
  return std::nullopt;
}

bool passes_confidence(const std::optional<double>& confidence, const BuildingLoadOptions& opts) {
  return !opts.min_confidence || !confidence || *confidence >= *opts.min_confidence;
}

// --- WKT -----------------------------------------------------------------

class WktReader {
 public:
  explicit WktReader(std::string_view text) : text_(text) {}

  std::vector<Polygon> read() {
    const std::string tag = detail::lower(word());
    std::vector<Polygon> parts;
    skip_dimension_tag();
    if (peek_word_is("empty")) {
      word();
    } else if (tag == "polygon") {
      parts.push_back(polygon());
    } else if (tag == "multipolygon") {
      expect('(');
      do {
        parts.push_back(polygon());
      } while (accept(','));
      expect(')');
    } else {
      throw std::invalid_argument("unsupported WKT type '" + tag + "'");
    }
    skip_space();
    if (pos_ != text_.size()) throw std::invalid_argument("trailing characters after WKT");
    return parts;
  }

 private:
  Polygon polygon() {
    expect('(');
    std::vector<PlanePoint> exterior = ring();
    std::vector<std::vector<PlanePoint>> holes;
    while (accept(',')) holes.push_back(ring());
    expect(')');
    return Polygon(std::move(exterior), std::move(holes));
  }

  std::vector<PlanePoint> ring() {
    expect('(');
    std::vector<PlanePoint> pts;
    do {
      const double lon = number();
      const double lat = number();
      skip_space();
      // optional Z / M ordinates
      while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ')') number();
      const GeoPoint g{lon, lat};
      if (!is_valid(g)) throw std::invalid_argument("WKT coordinate outside lon/lat range");
      pts.push_back(project_forward(g));
    } while (accept(','));
    expect(')');
    return pts;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view word() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw std::invalid_argument("expected WKT keyword");
    return text_.substr(start, pos_ - start);
  }

  bool peek_word_is(std::string_view w) {
    skip_space();
    std::size_t end = pos_;
    while (end < text_.size() && std::isalpha(static_cast<unsigned char>(text_[end]))) ++end;
    return detail::lower(text_.substr(pos_, end - pos_)) == w;
  }

  void skip_dimension_tag() {
    if (peek_word_is("z") || peek_word_is("m") || peek_word_is("zm")) word();
  }

  double number() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                                   text_[pos_] == '-' || text_[pos_] == '+' ||
                                   text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
    }
    const auto v = detail::parse_double(text_.substr(start, pos_ - start));
    if (!v) throw std::invalid_argument("expected WKT number");
    return *v;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) throw std::invalid_argument(std::string("expected '") + c + "' in WKT");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string_view next_line(std::string_view& text) {
  const auto nl = text.find('\n');
  std::string_view line = text.substr(0, nl);
  text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

std::optional<std::size_t> column_of(const std::vector<std::string>& header, std::string_view name) {
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (detail::lower(detail::trim(header[k])) == name) return k;
  }
  return std::nullopt;
}

bool has_csv_extension(const std::filesystem::path& path) {
  return detail::lower(path.extension().string()) == ".csv";
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw ConfigError("input file not found: " + path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open input file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

Loaded<RoadSegment> load_roads(const std::filesystem::path& path, const RoadLoadOptions& opts) {
  return parse_roads_geojson(read_text_file(path), opts);
}

Loaded<RoadSegment> parse_roads_geojson(std::string_view text, const RoadLoadOptions& opts) {
  const auto features = features_of(parse_json(text));
  Loaded<RoadSegment> out;
  out.report.input_count = features.size();
  for (std::size_t f = 0; f < features.size(); ++f) {
    const json& feature = features[f];
    std::vector<Polyline> parts;
    try {
      const auto geom = feature.find("geometry");
      if (geom == feature.end()) throw std::invalid_argument("missing geometry");
      parts = lines_of(*geom);
    } catch (const std::exception& e) {
      ++out.report.skipped;
      out.report.issues.push_back({f, std::string("road skipped: ") + e.what()});
      continue;
    }

    std::string road_class = "unknown";
    const json* cls = property(feature, opts.class_property);
    if (cls == nullptr) cls = property(feature, "highway");
    if (cls != nullptr && cls->is_string()) {
      const auto v = detail::lower(detail::trim(cls->get<std::string>()));
      if (!v.empty()) road_class = v;
    }
    Surface surface = Surface::unknown;
    if (const json* s = property(feature, opts.surface_property); s != nullptr && s->is_string()) {
      surface = normalize_surface(s->get<std::string>());
    }

    for (auto& line : parts) {
      out.items.push_back(RoadSegment{static_cast<std::int64_t>(out.items.size()), std::move(line),
                                      road_class, surface});
    }
    ++out.report.loaded;
  }
  return out;
}

namespace {
constexpr std::array<std::string_view, 10> kMotorable = {
    "living_street", "motorway", "primary", "residential",  "secondary",
    "service",       "tertiary", "trunk",   "unclassified", "unknown"};
}  // namespace

std::span<const std::string_view> motorable_classes() noexcept { return kMotorable; }

bool is_motorable(std::string_view road_class) noexcept {
  return std::find(kMotorable.begin(), kMotorable.end(), road_class) != kMotorable.end();
}

std::vector<RoadSegment> filter_motorable(std::span<const RoadSegment> roads) {
  std::vector<RoadSegment> out;
  for (const auto& r : roads) {
    if (is_motorable(r.road_class)) out.push_back(r);
  }
  return out;
}

Loaded<Building> load_buildings(const std::filesystem::path& path, const BuildingLoadOptions& opts) {
  const std::string text = read_text_file(path);
  return has_csv_extension(path) ? parse_buildings_csv(text, opts)
                                 : parse_buildings_geojson(text, opts);
}

Loaded<Building> parse_buildings_geojson(std::string_view text, const BuildingLoadOptions& opts) {
  const auto features = features_of(parse_json(text));
  Loaded<Building> out;
  out.report.input_count = features.size();
  for (std::size_t f = 0; f < features.size(); ++f) {
    const json& feature = features[f];
    std::vector<Polygon> parts;
    try {
      const auto geom = feature.find("geometry");
      if (geom == feature.end()) throw std::invalid_argument("missing geometry");
      parts = polygons_of(*geom);
      if (parts.empty()) throw std::invalid_argument("empty geometry");
    } catch (const std::exception& e) {
      ++out.report.skipped;
      out.report.issues.push_back({f, std::string("building skipped: ") + e.what()});
      continue;
    }
    const auto confidence = numeric_property(feature, opts.confidence_property);
    if (!passes_confidence(confidence, opts)) {
      ++out.report.filtered;
      continue;
    }
    for (auto& part : parts) {
      out.items.push_back(
          Building::make(static_cast<std::int64_t>(out.items.size()), std::move(part), confidence));
    }
    ++out.report.loaded;
  }
  return out;
}

Loaded<Building> parse_buildings_csv(std::string_view text, const BuildingLoadOptions& opts) {
  Loaded<Building> out;
  const auto header = detail::split_csv_line(next_line(text));
  auto geom_col = column_of(header, "geometry");
  if (!geom_col) geom_col = column_of(header, "wkt");
  if (!geom_col) throw DataError("building CSV has no 'geometry' column");
  const auto conf_col = column_of(header, detail::lower(opts.confidence_property));

  std::size_t line_no = 1;
  while (!text.empty()) {
    const std::string_view line = next_line(text);
    ++line_no;
    if (detail::trim(line).empty()) continue;
    ++out.report.input_count;
    std::vector<Polygon> parts;
    std::optional<double> confidence;
    try {
      const auto fields = detail::split_csv_line(line);
      if (fields.size() != header.size()) throw std::invalid_argument("wrong number of fields");
      parts = parse_wkt_polygons(fields[*geom_col]);
      if (parts.empty()) throw std::invalid_argument("empty geometry");
      if (conf_col) {
        confidence = detail::parse_double(fields[*conf_col]);
        if (!confidence && !detail::trim(fields[*conf_col]).empty()) {
          throw std::invalid_argument("confidence is not a number");
        }
      }
    } catch (const std::exception& e) {
      ++out.report.skipped;
      out.report.issues.push_back({line_no, std::string("building row skipped: ") + e.what()});
      continue;
    }
    if (!passes_confidence(confidence, opts)) {
      ++out.report.filtered;
      continue;
    }
    for (auto& part : parts) {
      out.items.push_back(
          Building::make(static_cast<std::int64_t>(out.items.size()), std::move(part), confidence));
    }
    ++out.report.loaded;
  }
  return out;
}

std::vector<Polygon> parse_wkt_polygons(std::string_view wkt) { return WktReader(wkt).read(); }

Boundary load_boundary(const std::filesystem::path& path) {
  return parse_boundary_geojson(read_text_file(path));
}

Boundary parse_boundary_geojson(std::string_view text) {
  const json doc = parse_json(text);
  std::vector<json> features;
  const std::string type = doc.is_object() ? doc.value("type", "") : "";
  if (type == "Polygon" || type == "MultiPolygon") {
    features.push_back(json{{"type", "Feature"}, {"geometry", doc}});
  } else {
    features = features_of(doc);
  }
  std::vector<Polygon> parts;
  for (const auto& feature : features) {
    try {
      auto ps = polygons_of(feature.at("geometry"));
      for (auto& p : ps) parts.push_back(std::move(p));
    } catch (const std::exception& e) {
      throw DataError(std::string("invalid boundary geometry: ") + e.what());
    }
  }
  return Boundary(std::move(parts));
}

std::pair<std::vector<Building>, std::vector<RoadSegment>> clip_to_boundary(
    std::span<const Building> buildings, std::span<const RoadSegment> roads,
    const Boundary& boundary, double road_margin) {
  std::vector<Building> kept_buildings;
  for (const auto& b : buildings) {
    if (boundary.contains(b.centroid)) kept_buildings.push_back(b);
  }
  const BBox reach = boundary.bbox().inflated(road_margin);
  std::vector<RoadSegment> kept_roads;
  for (const auto& r : roads) {
    if (r.geometry.bbox().intersects(reach)) kept_roads.push_back(r);
  }
  return {std::move(kept_buildings), std::move(kept_roads)};
}

Loaded<ValidationRecord> load_validations(const std::filesystem::path& path) {
  return parse_validations_csv(read_text_file(path));
}

Loaded<ValidationRecord> parse_validations_csv(std::string_view text) {
  const auto header = detail::split_csv_line(next_line(text));
  const auto ci = column_of(header, "cell_i");
  const auto cj = column_of(header, "cell_j");
  const auto cv = column_of(header, "validator_id");
  const auto cl = column_of(header, "level");
  if (!ci || !cj || !cv || !cl) {
    throw DataError("validation CSV header must contain cell_i,cell_j,validator_id,level");
  }

  Loaded<ValidationRecord> out;
  std::vector<ValidationRecord> raw;
  std::size_t line_no = 1;
  while (!text.empty()) {
    const std::string_view line = next_line(text);
    ++line_no;
    if (detail::trim(line).empty()) continue;
    ++out.report.input_count;
    const auto fields = detail::split_csv_line(line);
    std::string reason;
    std::optional<std::int64_t> i;
    std::optional<std::int64_t> j;
    std::optional<DeprivationLevel> level;
    if (fields.size() != header.size()) {
      reason = "wrong number of fields";
    } else if (!(i = detail::parse_int(fields[*ci])) || !(j = detail::parse_int(fields[*cj]))) {
      reason = "cell index is not an integer";
    } else if (!(level = parse_level(fields[*cl]))) {
      reason = "unknown level '" + std::string(detail::trim(fields[*cl])) + "'";
    }
    if (!reason.empty()) {
      ++out.report.skipped;
      out.report.issues.push_back({line_no, "validation row rejected: " + reason});
      continue;
    }
    raw.push_back({CellId{*i, *j}, std::string(detail::trim(fields[*cv])), *level});
  }
  out.items = collapse_duplicate_votes(raw);
  out.report.loaded = raw.size();
  return out;
}

std::vector<ValidationRecord> collapse_duplicate_votes(std::span<const ValidationRecord> records) {
  std::map<std::tuple<std::int64_t, std::int64_t, std::string>, std::size_t> last;
  for (std::size_t k = 0; k < records.size(); ++k) {
    last[{records[k].cell.i, records[k].cell.j, records[k].validator_id}] = k;
  }
  std::vector<std::size_t> keep;
  keep.reserve(last.size());
  for (const auto& [key, k] : last) keep.push_back(k);
  std::sort(keep.begin(), keep.end());
  std::vector<ValidationRecord> out;
  out.reserve(keep.size());
  for (auto k : keep) out.push_back(records[k]);
  return out;
}

}  // namespace roadaccess

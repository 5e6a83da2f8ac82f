#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "roadaccess/features.hpp"
#include "roadaccess/types.hpp"

namespace roadaccess {

/// A skipped or rejected input item. `location` is the feature index for
/// GeoJSON inputs and the 1-based line number for CSV inputs.
struct LoadIssue {
  std::size_t location = 0;
  std::string message;
};

/// Per-file accounting: input_count == loaded + skipped + filtered.
struct LoadReport {
  std::size_t input_count = 0;
  std::size_t loaded = 0;
  std::size_t skipped = 0;   ///< malformed or rejected
  std::size_t filtered = 0;  ///< valid but dropped by a filter (e.g. confidence)
  std::vector<LoadIssue> issues;
};

template <class T>
struct Loaded {
  std::vector<T> items;
  LoadReport report;
};

struct RoadLoadOptions {
  std::string surface_property = "surface";
  /// Looked up first; `highway` is used when absent, then "unknown".
  std::string class_property = "class";
};

struct BuildingLoadOptions {
  /// When set, buildings with confidence below it are dropped. Buildings
  /// without a confidence value are always kept.
  std::optional<double> min_confidence;
  std::string confidence_property = "confidence";
};

/// One RoadSegment per LineString (MultiLineStrings are split); ids are
/// assigned sequentially in file order.
Loaded<RoadSegment> load_roads(const std::filesystem::path& path, const RoadLoadOptions& opts = {});
Loaded<RoadSegment> parse_roads_geojson(std::string_view text, const RoadLoadOptions& opts = {});

/// Classes accepted as motorable, sorted.
std::span<const std::string_view> motorable_classes() noexcept;
bool is_motorable(std::string_view road_class) noexcept;
std::vector<RoadSegment> filter_motorable(std::span<const RoadSegment> roads);

/// GeoJSON, or CSV with a WKT `geometry` column when the extension is .csv.
/// MultiPolygons yield one Building per part.
Loaded<Building> load_buildings(const std::filesystem::path& path,
                                const BuildingLoadOptions& opts = {});
Loaded<Building> parse_buildings_geojson(std::string_view text,
                                         const BuildingLoadOptions& opts = {});
Loaded<Building> parse_buildings_csv(std::string_view text, const BuildingLoadOptions& opts = {});

/// Polygons of a WKT POLYGON or MULTIPOLYGON in lon/lat, projected.
/// Throws std::invalid_argument on malformed text.
std::vector<Polygon> parse_wkt_polygons(std::string_view wkt);

/// All Polygon/MultiPolygon parts of the file form the boundary.
Boundary load_boundary(const std::filesystem::path& path);
Boundary parse_boundary_geojson(std::string_view text);

inline constexpr double kRoadClipMargin = 500.0;

/// Buildings are kept iff their centroid is inside the boundary; roads iff
/// their bounding box meets the boundary box grown by `road_margin`.
std::pair<std::vector<Building>, std::vector<RoadSegment>> clip_to_boundary(
    std::span<const Building> buildings, std::span<const RoadSegment> roads,
    const Boundary& boundary, double road_margin = kRoadClipMargin);

/// CSV with header cell_i,cell_j,validator_id,level (any column order).
/// Rows with unknown levels or unparseable fields are rejected and listed in
/// the report; duplicate (cell, validator) rows keep the last occurrence.
Loaded<ValidationRecord> load_validations(const std::filesystem::path& path);
Loaded<ValidationRecord> parse_validations_csv(std::string_view text);

/// Keeps the last vote per (cell, validator), in order of those last votes.
std::vector<ValidationRecord> collapse_duplicate_votes(std::span<const ValidationRecord> records);

/// Reads a whole file; throws ConfigError when it is missing or unreadable.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace roadaccess

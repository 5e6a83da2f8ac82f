#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "roadaccess/geo.hpp"
#include "roadaccess/types.hpp"

namespace roadaccess::synth {

/// formal_grid: detached houses on a block grid, every house facing a street.
/// informal_cluster: contiguous rows of structures served by one edge road.
/// mixed: formal grid on the west half, informal cluster on the east half.
enum class Layout { formal_grid, informal_cluster, mixed };

std::string_view to_string(Layout layout) noexcept;
std::optional<Layout> parse_layout(std::string_view s);

struct SceneSpec {
  std::uint64_t seed = 1;
  Layout layout = Layout::formal_grid;
  double extent = 600.0;           ///< side length in meters, rounded to whole cells
  double road_surface_mix = 1.0;   ///< probability that a road is paved
  CellId origin_cell{0, 0};        ///< lower-left cell of the scene
  double cell_size = 100.0;
};

struct SceneRoad {
  Polyline geometry;
  std::string road_class;
  std::string surface_tag;  ///< raw OSM-style tag, e.g. "asphalt"
  Surface surface = Surface::unknown;
};

struct SceneBuilding {
  Polygon footprint;
  double confidence = 1.0;
};

struct ExpectedCell {
  CellId cell;
  DeprivationLevel level = DeprivationLevel::low;
  bool interior = false;  ///< false on the scene edge and at archetype seams
};

struct Scene {
  SceneSpec spec;
  std::vector<SceneBuilding> buildings;
  std::vector<SceneRoad> roads;  ///< in file order; ingest assigns road_id = position
  Polygon boundary;
  std::vector<ExpectedCell> expected;  ///< sorted by cell

  std::string buildings_geojson() const;
  std::string roads_geojson() const;
  std::string boundary_geojson() const;
  /// CSV: i,j,level,interior
  std::string expected_csv() const;
};

/// Deterministic for a given spec. Throws std::invalid_argument for an
/// extent below one cell (two for mixed) or a mix outside [0, 1].
Scene generate(const SceneSpec& spec);

/// Writes buildings.geojson, roads.geojson, boundary.geojson and
/// expected.csv into `dir` (created if needed).
void write_scene(const Scene& scene, const std::filesystem::path& dir);

}  // namespace roadaccess::synth

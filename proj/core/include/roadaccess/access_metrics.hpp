#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "roadaccess/features.hpp"
#include "roadaccess/geo.hpp"
#include "roadaccess/spatial_index.hpp"
#include "roadaccess/types.hpp"

namespace roadaccess {

/// Straight segment from a building centroid to the nearest point on the
/// nearest motorable road.
struct ConnectorLine {
  std::int64_t building_id = 0;
  PlanePoint start;  ///< building centroid
  PlanePoint end;    ///< nearest road point
  std::int64_t road_id = 0;
  std::size_t segment_id = 0;
  double road_distance = 0.0;

  Segment segment() const noexcept { return {start, end}; }
};

struct BuildingMetrics {
  std::int64_t building_id = 0;
  std::size_t obstruction_count = 0;
  Surface nearest_surface = Surface::unknown;
  double road_distance = 0.0;
  std::int64_t road_id = 0;
};

struct BuildingAccess {
  ConnectorLine connector;
  BuildingMetrics metrics;
};

ConnectorLine build_connector(const Building& b, const SegmentIndex& roads);

/// Number of distinct buildings other than the connector's own that touch
/// the closed connector segment. `buildings` must be the span `index` was
/// built from.
std::size_t count_obstructions(const ConnectorLine& c, const PolygonIndex& index,
                               std::span<const Building> buildings);

Surface assign_surface(const ConnectorLine& c, const SegmentIndex& roads);

/// Connector and metrics for every building, sorted by building_id. The
/// result does not depend on `workers` (0 means hardware concurrency).
std::vector<BuildingAccess> compute_access(std::span<const Building> buildings,
                                           const SegmentIndex& roads,
                                           const PolygonIndex& building_index,
                                           unsigned workers = 1);

std::vector<BuildingMetrics> compute_all(std::span<const Building> buildings,
                                         const SegmentIndex& roads,
                                         const PolygonIndex& building_index,
                                         unsigned workers = 1);

/// CSV: building_id,obstruction_count,nearest_surface,road_distance,road_id
void write_building_metrics_csv(std::ostream& out, std::span<const BuildingMetrics> metrics);

/// GeoJSON LineStrings in lon/lat with building_id, road_id,
/// obstruction_count, nearest_surface and road_distance properties.
void write_connectors_geojson(std::ostream& out, std::span<const BuildingAccess> access);

}  // namespace roadaccess

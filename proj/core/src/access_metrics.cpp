#include "roadaccess/access_metrics.hpp"

#include <algorithm>
#include <ostream>
#include <thread>

#include "json.hpp"
#include "text_format.hpp"

namespace roadaccess {

ConnectorLine build_connector(const Building& b, const SegmentIndex& roads) {
  const RoadHit hit = roads.nearest(b.centroid);
  return ConnectorLine{b.building_id, b.centroid, hit.point, hit.road_id, hit.segment_id,
                       hit.distance};
}

std::size_t count_obstructions(const ConnectorLine& c, const PolygonIndex& index,
                               std::span<const Building> buildings) {
  if (c.start == c.end) return 0;
  const Segment s = c.segment();
  std::vector<std::int64_t> hits;
  index.visit_candidates(s, [&](const PolygonIndex::Entry& e) {
    if (e.building_id == c.building_id) return;
    if (segment_intersects_polygon(s, buildings[e.position].footprint)) hits.push_back(e.building_id);
  });
  std::sort(hits.begin(), hits.end());
  return static_cast<std::size_t>(std::unique(hits.begin(), hits.end()) - hits.begin());
}

Surface assign_surface(const ConnectorLine& c, const SegmentIndex& roads) {
  return roads.surface_of(c.road_id);
}

std::vector<BuildingAccess> compute_access(std::span<const Building> buildings,
                                           const SegmentIndex& roads,
                                           const PolygonIndex& building_index, unsigned workers) {
  std::vector<BuildingAccess> out(buildings.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const ConnectorLine c = build_connector(buildings[k], roads);
      out[k] = BuildingAccess{
          c, BuildingMetrics{c.building_id, count_obstructions(c, building_index, buildings),
                             assign_surface(c, roads), c.road_distance, c.road_id}};
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n = buildings.size();
  const std::size_t threads = std::min<std::size_t>(workers, std::max<std::size_t>(1, n / 64));
  if (threads <= 1) {
    work(0, n);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
  }

  std::stable_sort(out.begin(), out.end(), [](const BuildingAccess& a, const BuildingAccess& b) {
    return a.metrics.building_id < b.metrics.building_id;
  });
  return out;
}

std::vector<BuildingMetrics> compute_all(std::span<const Building> buildings,
                                         const SegmentIndex& roads,
                                         const PolygonIndex& building_index, unsigned workers) {
  const auto access = compute_access(buildings, roads, building_index, workers);
  std::vector<BuildingMetrics> out;
  out.reserve(access.size());
  for (const auto& a : access) out.push_back(a.metrics);
  return out;
}

void write_building_metrics_csv(std::ostream& out, std::span<const BuildingMetrics> metrics) {
  out << "building_id,obstruction_count,nearest_surface,road_distance,road_id\n";
  for (const auto& m : metrics) {
    out << m.building_id << ',' << m.obstruction_count << ',' << to_string(m.nearest_surface) << ','
        << detail::format_double(m.road_distance) << ',' << m.road_id << '\n';
  }
}

void write_connectors_geojson(std::ostream& out, std::span<const BuildingAccess> access) {
  using nlohmann::json;
  json features = json::array();
  for (const auto& a : access) {
    const GeoPoint s = project_inverse(a.connector.start);
    const GeoPoint e = project_inverse(a.connector.end);
    features.push_back({
        {"type", "Feature"},
        {"geometry",
         {{"type", "LineString"}, {"coordinates", {{s.lon, s.lat}, {e.lon, e.lat}}}}},
        {"properties",
         {{"building_id", a.metrics.building_id},
          {"road_id", a.metrics.road_id},
          {"obstruction_count", a.metrics.obstruction_count},
          {"nearest_surface", std::string(to_string(a.metrics.nearest_surface))},
          {"road_distance", a.metrics.road_distance}}},
    });
  }
  out << json{{"type", "FeatureCollection"}, {"features", std::move(features)}}.dump() << '\n';
}

}  // namespace roadaccess

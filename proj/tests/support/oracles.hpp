#pragma once

// Brute-force reference implementations used by unit and acceptance tests.
// None of these touch the spatial indexes.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <tuple>
#include <vector>

#include "roadaccess/access_metrics.hpp"
#include "roadaccess/features.hpp"
#include "roadaccess/geo.hpp"
#include "roadaccess/ingest.hpp"
#include "roadaccess/spatial_index.hpp"
#include "roadaccess/synth.hpp"

namespace roadaccess::testing {

/// O(M) scan over every segment of every road with the same tie rule.
inline RoadHit brute_nearest_road(const PlanePoint& p, std::span<const RoadSegment> roads) {
  RoadHit best;
  bool found = false;
  std::size_t segment_id = 0;
  for (const auto& road : roads) {
    for (std::size_t k = 0; k < road.geometry.segment_count(); ++k, ++segment_id) {
      const auto hit = nearest_point_on_segment(p, road.geometry.segment(k));
      if (!found || hit.distance < best.distance ||
          (hit.distance == best.distance &&
           std::tie(road.road_id, segment_id) < std::tie(best.road_id, best.segment_id))) {
        best = {road.road_id, segment_id, hit.point, hit.distance};
        found = true;
      }
    }
  }
  return best;
}

/// O(N) scan: distinct other buildings touching the closed connector.
inline std::size_t brute_obstructions(const Segment& connector, std::int64_t source_id,
                                      std::span<const Building> buildings) {
  if (connector.a == connector.b) return 0;
  std::size_t n = 0;
  for (const auto& b : buildings) {
    if (b.building_id != source_id && segment_intersects_polygon(connector, b.footprint)) ++n;
  }
  return n;
}

/// Whole-pipeline metric oracle for a scene: O(N*M + N^2).
inline std::vector<BuildingMetrics> brute_metrics(std::span<const Building> buildings,
                                                  std::span<const RoadSegment> roads) {
  std::vector<BuildingMetrics> out;
  for (const auto& b : buildings) {
    const RoadHit hit = brute_nearest_road(b.centroid, roads);
    Surface surface = Surface::unknown;
    for (const auto& r : roads) {
      if (r.road_id == hit.road_id) surface = r.surface;
    }
    out.push_back({b.building_id, brute_obstructions({b.centroid, hit.point}, b.building_id, buildings),
                   surface, hit.distance, hit.road_id});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return x.building_id < y.building_id; });
  return out;
}

/// Point-in-polygon by winding number (independent of the even-odd code).
inline bool winding_inside(const PlanePoint& p, std::span<const PlanePoint> ring) {
  int wn = 0;
  for (std::size_t k = 0; k + 1 < ring.size(); ++k) {
    const auto& a = ring[k];
    const auto& b = ring[k + 1];
    const double cross = (b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y);
    if (a.y <= p.y) {
      if (b.y > p.y && cross > 0) ++wn;
    } else if (b.y <= p.y && cross < 0) {
      --wn;
    }
  }
  return wn != 0;
}

inline bool oracle_point_in_polygon(const PlanePoint& p, const Polygon& poly) {
  if (!winding_inside(p, poly.exterior())) return false;
  for (const auto& h : poly.holes()) {
    if (winding_inside(p, h)) return false;
  }
  return true;
}

inline double point_segment_distance(const PlanePoint& p, const PlanePoint& a, const PlanePoint& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

/// Smallest distance between s and any polygon edge (0 if they cross).
inline double boundary_clearance(const Segment& s, const Polygon& poly) {
  double best = std::numeric_limits<double>::infinity();
  auto ring_clearance = [&](std::span<const PlanePoint> ring) {
    for (std::size_t k = 0; k + 1 < ring.size(); ++k) {
      const Segment e{ring[k], ring[k + 1]};
      if (segments_intersect(s, e)) {
        best = 0;
        return;
      }
      best = std::min({best, point_segment_distance(s.a, e.a, e.b), point_segment_distance(s.b, e.a, e.b),
                       point_segment_distance(e.a, s.a, s.b), point_segment_distance(e.b, s.a, s.b)});
    }
  };
  ring_clearance(poly.exterior());
  for (const auto& h : poly.holes()) ring_clearance(h);
  return best;
}

/// Samples n points along s and tests each with the winding-number oracle.
inline bool dense_sample_intersects(const Segment& s, const Polygon& poly, int n = 10000) {
  for (int k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / (n - 1);
    const PlanePoint p{s.a.x + t * (s.b.x - s.a.x), s.a.y + t * (s.b.y - s.a.y)};
    if (oracle_point_in_polygon(p, poly)) return true;
  }
  return false;
}

/// Area of a lon/lat box on the sphere of radius kSphereRadius.
inline double spherical_box_area(double lon0, double lat0, double lon1, double lat1) {
  constexpr double d2r = std::numbers::pi / 180.0;
  return kSphereRadius * kSphereRadius * std::abs((lon1 - lon0) * d2r) *
         std::abs(std::sin(lat1 * d2r) - std::sin(lat0 * d2r));
}

/// Random rotated rectangle footprint.
inline Polygon random_footprint(std::mt19937_64& rng, PlanePoint center, double min_size, double max_size) {
  std::uniform_real_distribution<double> size(min_size, max_size);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  const double w = size(rng) / 2;
  const double h = size(rng) / 2;
  const double a = angle(rng);
  const double c = std::cos(a);
  const double s = std::sin(a);
  std::vector<PlanePoint> ring;
  for (auto [u, v] : {std::pair{-w, -h}, {w, -h}, {w, h}, {-w, h}}) {
    ring.push_back({center.x + u * c - v * s, center.y + u * s + v * c});
  }
  return Polygon(std::move(ring));
}

struct RandomScene {
  std::vector<Building> buildings;
  std::vector<RoadSegment> roads;
};

/// Random buildings (possibly overlapping) and random 2-4 vertex roads in
/// a square of side `extent` anchored at `origin`.
inline RandomScene random_scene(std::uint64_t seed, std::size_t n_buildings, std::size_t n_road_segments,
                                double extent = 500.0, PlanePoint origin = {0, 0}) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, extent);
  std::uniform_int_distribution<int> verts(2, 4);
  RandomScene scene;
  std::size_t segments = 0;
  while (segments < n_road_segments) {
    const std::size_t nv = std::min<std::size_t>(verts(rng), n_road_segments - segments + 1);
    std::vector<PlanePoint> pts;
    for (std::size_t k = 0; k < nv; ++k) pts.push_back({origin.x + coord(rng), origin.y + coord(rng)});
    Polyline line(pts);
    segments += line.segment_count();
    const Surface s = (rng() & 1) ? Surface::paved : Surface::unpaved;
    scene.roads.push_back({static_cast<std::int64_t>(scene.roads.size()), std::move(line), "residential", s});
  }
  for (std::size_t k = 0; k < n_buildings; ++k) {
    scene.buildings.push_back(Building::make(static_cast<std::int64_t>(k),
                                             random_footprint(rng, {origin.x + coord(rng), origin.y + coord(rng)}, 4, 20)));
  }
  return scene;
}

/// Synthetic scene as pipeline inputs: ids follow file order and
/// non-motorable roads are dropped, mirroring what ingest would produce.
inline RandomScene scene_inputs(const synth::Scene& scene) {
  RandomScene out;
  for (std::size_t k = 0; k < scene.buildings.size(); ++k) {
    out.buildings.push_back(Building::make(static_cast<std::int64_t>(k), scene.buildings[k].footprint));
  }
  for (std::size_t k = 0; k < scene.roads.size(); ++k) {
    const auto& r = scene.roads[k];
    if (!is_motorable(r.road_class)) continue;
    out.roads.push_back({static_cast<std::int64_t>(k), r.geometry, r.road_class, r.surface});
  }
  return out;
}

/// Independent scalar F1 for class c on a [ref][model] matrix.
inline double scalar_f1(const std::array<std::array<std::size_t, 3>, 3>& m, std::size_t c) {
  double tp = 0, fp = 0, fn = 0;
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t p = 0; p < 3; ++p) {
      const auto v = static_cast<double>(m[r][p]);
      if (r == c && p == c) tp += v;
      else if (p == c) fp += v;
      else if (r == c) fn += v;
    }
  }
  if (tp + fp + fn == 0) return 0.0;
  return tp / (tp + 0.5 * (fp + fn));
}

}  // namespace roadaccess::testing

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "roadaccess/geo.hpp"
#include "roadaccess/types.hpp"

namespace roadaccess {

/// One motorable-road candidate: a single LineString with its class and surface.
struct RoadSegment {
  std::int64_t road_id = 0;
  Polyline geometry;
  std::string road_class = "unknown";  ///< OSM highway-style class
  Surface surface = Surface::unknown;
};

/// Building footprint with its derived centroid.
struct Building {
  std::int64_t building_id = 0;
  Polygon footprint;
  PlanePoint centroid;
  std::optional<double> confidence;

  /// Computes the centroid from the footprint.
  static Building make(std::int64_t id, Polygon footprint,
                       std::optional<double> confidence = std::nullopt);
};

/// Analysis extent in projected coordinates. Multi-part boundaries are
/// the union of their parts.
class Boundary {
 public:
  /// Throws DataError when there are no parts or the total area is zero.
  explicit Boundary(std::vector<Polygon> parts);

  const std::vector<Polygon>& parts() const noexcept { return parts_; }
  const BBox& bbox() const noexcept { return bbox_; }
  double area() const noexcept;
  bool contains(const PlanePoint& p) const noexcept;

 private:
  std::vector<Polygon> parts_;
  BBox bbox_;
};

}  // namespace roadaccess

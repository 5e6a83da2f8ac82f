#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace roadaccess {

/// Sphere radius used for the Mollweide grid (ESRI:54009 convention).
inline constexpr double kSphereRadius = 6378137.0;

/// Geographic coordinate in degrees.
struct GeoPoint {
  double lon = 0.0;
  double lat = 0.0;
};

bool is_valid(const GeoPoint& p) noexcept;

/// Projected Mollweide coordinate in meters.
struct PlanePoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

struct Segment {
  PlanePoint a;
  PlanePoint b;
};

/// Axis-aligned box. A default-constructed box is empty and absorbs
/// the first point it is expanded with.
struct BBox {
  double min_x = 1.0;
  double min_y = 1.0;
  double max_x = -1.0;
  double max_y = -1.0;

  static BBox of(const PlanePoint& p) noexcept { return {p.x, p.y, p.x, p.y}; }
  static BBox of(const Segment& s) noexcept;
  static BBox of(std::span<const PlanePoint> pts) noexcept;

  bool empty() const noexcept { return min_x > max_x || min_y > max_y; }
  void expand(const PlanePoint& p) noexcept;
  void expand(const BBox& b) noexcept;
  BBox inflated(double margin) const noexcept;
  bool intersects(const BBox& o) const noexcept;
  bool contains(const PlanePoint& p) const noexcept;
  PlanePoint center() const noexcept { return {(min_x + max_x) / 2, (min_y + max_y) / 2}; }
  /// Euclidean distance from p to the box (0 inside); a lower bound on the
  /// distance from p to anything the box encloses.
  double distance_to(const PlanePoint& p) const noexcept;
};

/// Open chain of at least two vertices; consecutive duplicates are dropped.
class Polyline {
 public:
  /// Throws std::invalid_argument when fewer than two distinct vertices remain.
  explicit Polyline(std::vector<PlanePoint> vertices);

  const std::vector<PlanePoint>& vertices() const noexcept { return vertices_; }
  std::size_t segment_count() const noexcept { return vertices_.size() - 1; }
  Segment segment(std::size_t k) const noexcept { return {vertices_[k], vertices_[k + 1]}; }
  BBox bbox() const noexcept { return BBox::of(vertices_); }

 private:
  std::vector<PlanePoint> vertices_;
};

/// Polygon with an exterior ring and optional holes. Rings are stored
/// closed (first == last); open input rings are closed on construction.
class Polygon {
 public:
  /// Throws std::invalid_argument if the closed exterior has fewer than 4
  /// vertices or a hole has fewer than 4.
  explicit Polygon(std::vector<PlanePoint> exterior,
                   std::vector<std::vector<PlanePoint>> holes = {});

  const std::vector<PlanePoint>& exterior() const noexcept { return exterior_; }
  const std::vector<std::vector<PlanePoint>>& holes() const noexcept { return holes_; }
  const BBox& bbox() const noexcept { return bbox_; }

  /// Exterior area minus hole areas, always nonnegative for valid input.
  double area() const noexcept;

 private:
  std::vector<PlanePoint> exterior_;
  std::vector<std::vector<PlanePoint>> holes_;
  BBox bbox_;
};

/// Spherical Mollweide, central meridian 0.
PlanePoint project_forward(const GeoPoint& p) noexcept;

/// Inverse of project_forward. Throws std::domain_error outside the ellipse.
GeoPoint project_inverse(const PlanePoint& p);

/// Signed shoelace area of a closed ring (counter-clockwise positive).
double ring_signed_area(std::span<const PlanePoint> ring) noexcept;

/// Area-weighted centroid (exterior minus holes). Falls back to the mean of
/// the exterior vertices when |area| < 1e-9 m².
PlanePoint polygon_centroid(const Polygon& poly) noexcept;

struct NearestOnSegment {
  PlanePoint point;
  double distance = 0.0;
};

/// Orthogonal projection of p onto s clamped to [a, b].
NearestOnSegment nearest_point_on_segment(const PlanePoint& p, const Segment& s) noexcept;

struct NearestOnPolyline {
  PlanePoint point;
  double distance = 0.0;
  std::size_t vertex_index = 0;  ///< index of the first vertex of the winning segment
};

/// Minimum over constituent segments; ties go to the lowest vertex index.
NearestOnPolyline nearest_point_on_polyline(const PlanePoint& p, const Polyline& line) noexcept;

/// Closed-segment intersection test (touching and collinear overlap count).
bool segments_intersect(const Segment& s, const Segment& t) noexcept;

/// Even-odd rule over all rings. Points exactly on an edge may go either way.
bool point_in_polygon(const PlanePoint& p, const Polygon& poly) noexcept;

/// True iff s shares at least one point with the polygon's boundary or interior.
bool segment_intersects_polygon(const Segment& s, const Polygon& poly) noexcept;

/// Conservative segment/box overlap (box boundary inclusive).
bool segment_intersects_box(const Segment& s, const BBox& box) noexcept;

}  // namespace roadaccess

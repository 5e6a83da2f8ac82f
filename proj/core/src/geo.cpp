#include "roadaccess/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace roadaccess {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kDegToRad = kPi / 180.0;
constexpr double kRadToDeg = 180.0 / kPi;
constexpr double kMaxY = kSqrt2 * kSphereRadius;
constexpr double kMaxX = 2.0 * kSqrt2 * kSphereRadius;

double orient(const PlanePoint& a, const PlanePoint& b, const PlanePoint& c) noexcept {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

// c is known collinear with [a, b]; is it inside the segment's extent?
bool within_extent(const PlanePoint& a, const PlanePoint& b, const PlanePoint& c) noexcept {
  return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= c.y &&
         c.y <= std::max(a.y, b.y);
}

std::vector<PlanePoint> close_ring(std::vector<PlanePoint> ring) {
  if (!ring.empty() && !(ring.front() == ring.back())) ring.push_back(ring.front());
  return ring;
}

bool point_in_ring(const PlanePoint& p, std::span<const PlanePoint> ring) noexcept {
  bool inside = false;
  for (std::size_t k = 0, n = ring.size(); k + 1 < n; ++k) {
    const PlanePoint& u = ring[k];
    const PlanePoint& v = ring[k + 1];
    if ((u.y > p.y) != (v.y > p.y)) {
      const double x_cross = u.x + (p.y - u.y) * (v.x - u.x) / (v.y - u.y);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

bool segment_crosses_ring(const Segment& s, std::span<const PlanePoint> ring) noexcept {
  for (std::size_t k = 0, n = ring.size(); k + 1 < n; ++k) {
    if (segments_intersect(s, Segment{ring[k], ring[k + 1]})) return true;
  }
  return false;
}

struct RingMoments {
  double area = 0.0;  // signed
  double mx = 0.0;    // signed first moments, relative to the shared origin
  double my = 0.0;
};

RingMoments ring_moments(std::span<const PlanePoint> ring, const PlanePoint& origin) noexcept {
  RingMoments m;
  for (std::size_t k = 0, n = ring.size(); k + 1 < n; ++k) {
    const double x0 = ring[k].x - origin.x;
    const double y0 = ring[k].y - origin.y;
    const double x1 = ring[k + 1].x - origin.x;
    const double y1 = ring[k + 1].y - origin.y;
    const double cross = x0 * y1 - x1 * y0;
    m.area += cross;
    m.mx += (x0 + x1) * cross;
    m.my += (y0 + y1) * cross;
  }
  m.area /= 2.0;
  m.mx /= 6.0;
  m.my /= 6.0;
  return m;
}

}  // namespace

bool is_valid(const GeoPoint& p) noexcept {
  return std::isfinite(p.lon) && std::isfinite(p.lat) && p.lon >= -180.0 && p.lon <= 180.0 &&
         p.lat >= -90.0 && p.lat <= 90.0;
}

BBox BBox::of(const Segment& s) noexcept {
  BBox b = of(s.a);
  b.expand(s.b);
  return b;
}

BBox BBox::of(std::span<const PlanePoint> pts) noexcept {
  BBox b;
  for (const auto& p : pts) b.expand(p);
  return b;
}

void BBox::expand(const PlanePoint& p) noexcept {
  if (empty()) {
    *this = of(p);
    return;
  }
  min_x = std::min(min_x, p.x);
  min_y = std::min(min_y, p.y);
  max_x = std::max(max_x, p.x);
  max_y = std::max(max_y, p.y);
}

void BBox::expand(const BBox& b) noexcept {
  if (b.empty()) return;
  if (empty()) {
    *this = b;
    return;
  }
  min_x = std::min(min_x, b.min_x);
  min_y = std::min(min_y, b.min_y);
  max_x = std::max(max_x, b.max_x);
  max_y = std::max(max_y, b.max_y);
}

BBox BBox::inflated(double margin) const noexcept {
  if (empty()) return *this;
  return {min_x - margin, min_y - margin, max_x + margin, max_y + margin};
}

bool BBox::intersects(const BBox& o) const noexcept {
  if (empty() || o.empty()) return false;
  return min_x <= o.max_x && o.min_x <= max_x && min_y <= o.max_y && o.min_y <= max_y;
}

bool BBox::contains(const PlanePoint& p) const noexcept {
  return !empty() && min_x <= p.x && p.x <= max_x && min_y <= p.y && p.y <= max_y;
}

double BBox::distance_to(const PlanePoint& p) const noexcept {
  const double dx = std::max({min_x - p.x, 0.0, p.x - max_x});
  const double dy = std::max({min_y - p.y, 0.0, p.y - max_y});
  return std::hypot(dx, dy);
}

Polyline::Polyline(std::vector<PlanePoint> vertices) {
  vertices_.reserve(vertices.size());
  for (const auto& v : vertices) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
      throw std::invalid_argument("polyline vertex is not finite");
    }
    if (vertices_.empty() || !(vertices_.back() == v)) vertices_.push_back(v);
  }
  if (vertices_.size() < 2) {
    throw std::invalid_argument("polyline needs at least two distinct vertices");
  }
}

Polygon::Polygon(std::vector<PlanePoint> exterior, std::vector<std::vector<PlanePoint>> holes)
    : exterior_(close_ring(std::move(exterior))) {
  if (exterior_.size() < 4) throw std::invalid_argument("polygon exterior needs >= 4 vertices");
  for (const auto& v : exterior_) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
      throw std::invalid_argument("polygon vertex is not finite");
    }
  }
  holes_.reserve(holes.size());
  for (auto& h : holes) {
    auto ring = close_ring(std::move(h));
    if (ring.size() < 4) throw std::invalid_argument("polygon hole needs >= 4 vertices");
    holes_.push_back(std::move(ring));
  }
  bbox_ = BBox::of(exterior_);
}

double Polygon::area() const noexcept {
  double a = std::abs(ring_signed_area(exterior_));
  for (const auto& h : holes_) a -= std::abs(ring_signed_area(h));
  return a;
}

namespace {

// Near the poles both 2θ + sin 2θ = π sin φ and its inverse lose digits to
// cancellation. There we work with the colatitudes u = π/2 - |θ| and
// v = π/2 - |φ|, for which the equation becomes 2u - sin 2u = 2π sin²(v/2).
constexpr double kPolarLatitude = 60.0;   // degrees
constexpr double kPolarSinTheta = 0.85;   // |y| / kMaxY; θ ≈ 58°, φ ≈ 72°

// w - sin w without cancellation for small w.
double w_minus_sin(double w) noexcept {
  if (w > 0.5) return w - std::sin(w);
  const double w2 = w * w;
  double term = w * w2 / 6.0;
  double sum = 0.0;
  for (int k = 4; std::abs(term) > 1e-300 && k < 40; k += 2) {
    sum += term;
    term *= -w2 / (k * (k + 1));
  }
  return sum;
}

PlanePoint polar_forward(double lon_rad, double lat_deg) noexcept {
  const double v = (90.0 - std::abs(lat_deg)) * kDegToRad;
  const double sv = std::sin(v / 2.0);
  const double target = 2.0 * kPi * sv * sv;
  double u = std::cbrt(0.75 * target);
  for (int iter = 0; iter < 50 && u > 0.0; ++iter) {
    const double su = std::sin(u);
    const double delta = (w_minus_sin(2.0 * u) - target) / (4.0 * su * su);
    u -= delta;
    if (std::abs(delta) <= 1e-15 * u) break;
  }
  return {kMaxX / kPi * lon_rad * std::sin(u), std::copysign(kMaxY * std::cos(u), lat_deg)};
}

}  // namespace

PlanePoint project_forward(const GeoPoint& p) noexcept {
  const double phi = p.lat * kDegToRad;
  const double lambda = p.lon * kDegToRad;
  if (std::abs(p.lat) >= 90.0 - 1e-9) {
    return {0.0, std::copysign(kMaxY, p.lat)};
  }
  if (std::abs(p.lat) > kPolarLatitude) return polar_forward(lambda, p.lat);
  const double target = kPi * std::sin(phi);
  double theta = phi;
  for (int iter = 0; iter < 50; ++iter) {
    const double delta = (2.0 * theta + std::sin(2.0 * theta) - target) / (2.0 + 2.0 * std::cos(2.0 * theta));
    theta -= delta;
    if (std::abs(delta) < 1e-12) break;
  }
  return {kMaxX / kPi * lambda * std::cos(theta), kMaxY * std::sin(theta)};
}

GeoPoint project_inverse(const PlanePoint& p) {
  constexpr double kTol = 1e-9;
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || std::abs(p.y) > kMaxY * (1.0 + kTol)) {
    throw std::domain_error("point outside the Mollweide ellipse");
  }
  double lat;
  double cos_theta;
  const double s = std::min(std::abs(p.y), kMaxY);
  if (s / kMaxY > kPolarSinTheta) {
    const double u = 2.0 * std::asin(std::sqrt((kMaxY - s) / (2.0 * kMaxY)));
    const double sv2 = w_minus_sin(2.0 * u) / (2.0 * kPi);
    const double v = 2.0 * std::asin(std::sqrt(std::min(sv2, 1.0)));
    lat = std::copysign(90.0 - v * kRadToDeg, p.y);
    cos_theta = std::sin(u);
  } else {
    const double theta = std::asin(p.y / kMaxY);
    const double sin_phi = std::clamp((2.0 * theta + std::sin(2.0 * theta)) / kPi, -1.0, 1.0);
    lat = std::asin(sin_phi) * kRadToDeg;
    cos_theta = std::cos(theta);
  }
  const double half_width = kMaxX * cos_theta;
  if (std::abs(p.x) > half_width * (1.0 + kTol) + kTol) {
    throw std::domain_error("point outside the Mollweide ellipse");
  }
  if (half_width <= 0.0) return {0.0, lat};
  const double lambda = kPi * p.x / half_width;
  return {std::clamp(lambda * kRadToDeg, -180.0, 180.0), lat};
}

double ring_signed_area(std::span<const PlanePoint> ring) noexcept {
  if (ring.empty()) return 0.0;
  return ring_moments(ring, ring.front()).area;
}

PlanePoint polygon_centroid(const Polygon& poly) noexcept {
  const auto& ext = poly.exterior();
  const PlanePoint origin = ext.front();

  const RingMoments outer = ring_moments(ext, origin);
  const double outer_sign = outer.area < 0 ? -1.0 : 1.0;
  double area = outer_sign * outer.area;
  double mx = outer_sign * outer.mx;
  double my = outer_sign * outer.my;
  for (const auto& hole : poly.holes()) {
    const RingMoments h = ring_moments(hole, origin);
    const double sign = h.area < 0 ? 1.0 : -1.0;
    area += sign * h.area;
    mx += sign * h.mx;
    my += sign * h.my;
  }

  if (std::abs(area) < 1e-9) {
    double sx = 0.0;
    double sy = 0.0;
    const std::size_t n = ext.size() - 1;  // skip the closing vertex
    for (std::size_t k = 0; k < n; ++k) {
      sx += ext[k].x - origin.x;
      sy += ext[k].y - origin.y;
    }
    return {origin.x + sx / static_cast<double>(n), origin.y + sy / static_cast<double>(n)};
  }
  return {origin.x + mx / area, origin.y + my / area};
}

NearestOnSegment nearest_point_on_segment(const PlanePoint& p, const Segment& s) noexcept {
  const double dx = s.b.x - s.a.x;
  const double dy = s.b.y - s.a.y;
  const double len2 = dx * dx + dy * dy;
  PlanePoint q = s.a;
  if (len2 > 0.0) {
    const double t = ((p.x - s.a.x) * dx + (p.y - s.a.y) * dy) / len2;
    if (t >= 1.0) {
      q = s.b;
    } else if (t > 0.0) {
      q = {s.a.x + t * dx, s.a.y + t * dy};
    }
  }
  return {q, std::hypot(p.x - q.x, p.y - q.y)};
}

NearestOnPolyline nearest_point_on_polyline(const PlanePoint& p, const Polyline& line) noexcept {
  NearestOnPolyline best;
  for (std::size_t k = 0; k < line.segment_count(); ++k) {
    const auto hit = nearest_point_on_segment(p, line.segment(k));
    if (k == 0 || hit.distance < best.distance) best = {hit.point, hit.distance, k};
  }
  return best;
}

bool segments_intersect(const Segment& s, const Segment& t) noexcept {
  const double o1 = orient(s.a, s.b, t.a);
  const double o2 = orient(s.a, s.b, t.b);
  const double o3 = orient(t.a, t.b, s.a);
  const double o4 = orient(t.a, t.b, s.b);

  if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) {
    return true;
  }
  if (o1 == 0 && within_extent(s.a, s.b, t.a)) return true;
  if (o2 == 0 && within_extent(s.a, s.b, t.b)) return true;
  if (o3 == 0 && within_extent(t.a, t.b, s.a)) return true;
  if (o4 == 0 && within_extent(t.a, t.b, s.b)) return true;
  return false;
}

bool point_in_polygon(const PlanePoint& p, const Polygon& poly) noexcept {
  if (!poly.bbox().contains(p)) return false;
  bool inside = point_in_ring(p, poly.exterior());
  for (const auto& h : poly.holes()) {
    if (point_in_ring(p, h)) inside = !inside;
  }
  return inside;
}

bool segment_intersects_polygon(const Segment& s, const Polygon& poly) noexcept {
  if (!BBox::of(s).intersects(poly.bbox())) return false;
  if (point_in_polygon(s.a, poly) || point_in_polygon(s.b, poly)) return true;
  if (segment_crosses_ring(s, poly.exterior())) return true;
  for (const auto& h : poly.holes()) {
    if (segment_crosses_ring(s, h)) return true;
  }
  return false;
}

bool segment_intersects_box(const Segment& s, const BBox& box) noexcept {
  if (box.empty()) return false;
  // Liang-Barsky clipping of the parametric segment against the box.
  double t0 = 0.0;
  double t1 = 1.0;
  const double dx = s.b.x - s.a.x;
  const double dy = s.b.y - s.a.y;
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {s.a.x - box.min_x, box.max_x - s.a.x, s.a.y - box.min_y,
                       box.max_y - s.a.y};
  for (int k = 0; k < 4; ++k) {
    if (p[k] == 0.0) {
      if (q[k] < 0.0) return false;
      continue;
    }
    const double r = q[k] / p[k];
    if (p[k] < 0.0) {
      t0 = std::max(t0, r);
    } else {
      t1 = std::min(t1, r);
    }
    if (t0 > t1) return false;
  }
  return true;
}

}  // namespace roadaccess

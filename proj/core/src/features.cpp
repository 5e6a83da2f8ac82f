#include "roadaccess/features.hpp"

#include "roadaccess/errors.hpp"

namespace roadaccess {

Building Building::make(std::int64_t id, Polygon footprint, std::optional<double> confidence) {
  const PlanePoint c = polygon_centroid(footprint);
  return Building{id, std::move(footprint), c, confidence};
}

Boundary::Boundary(std::vector<Polygon> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw DataError("boundary has no polygon parts");
  for (const auto& p : parts_) bbox_.expand(p.bbox());
  if (!(area() > 0.0)) throw DataError("boundary has zero area");
}

double Boundary::area() const noexcept {
  double a = 0.0;
  for (const auto& p : parts_) a += p.area();
  return a;
}

bool Boundary::contains(const PlanePoint& p) const noexcept {
  for (const auto& part : parts_) {
    if (point_in_polygon(p, part)) return true;
  }
  return false;
}

}  // namespace roadaccess

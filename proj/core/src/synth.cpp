#include "roadaccess/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "roadaccess/errors.hpp"
#include "roadaccess/grid.hpp"

namespace roadaccess::synth {

namespace {

using nlohmann::json;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  // Uniform in [0, 1); mt19937_64 output is fully specified, so this is portable.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double between(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t pick(std::size_t n) { return std::min(n - 1, static_cast<std::size_t>(uniform() * n)); }

 private:
  std::mt19937_64 gen_;
};

Polygon rectangle(double x0, double y0, double x1, double y1) {
  return Polygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

json ring_json(const std::vector<PlanePoint>& ring) {
  json out = json::array();
  for (const auto& p : ring) {
    const GeoPoint g = project_inverse(p);
    out.push_back({g.lon, g.lat});
  }
  return out;
}

json polygon_json(const Polygon& poly) {
  json rings = json::array({ring_json(poly.exterior())});
  for (const auto& h : poly.holes()) rings.push_back(ring_json(h));
  return {{"type", "Polygon"}, {"coordinates", std::move(rings)}};
}

class Builder {
 public:
  Builder(const SceneSpec& spec, std::size_t cells)
      : spec_(spec), cells_(cells), rng_(spec.seed), origin_(cell_origin(spec.origin_cell, spec.cell_size)) {}

  double x_at(std::size_t col) const { return origin_.x + static_cast<double>(col) * spec_.cell_size; }
  double y_at(std::size_t row) const { return origin_.y + static_cast<double>(row) * spec_.cell_size; }

  std::size_t add_road(PlanePoint a, PlanePoint b, std::string cls, bool paved) {
    std::string tag = paved ? (rng_.uniform() < 0.5 ? "asphalt" : "paved")
                            : (rng_.uniform() < 0.5 ? "dirt" : "gravel");
    roads_.push_back({Polyline({a, b}), std::move(cls), tag, paved ? Surface::paved : Surface::unpaved});
    return roads_.size() - 1;
  }

  std::size_t add_motorable(PlanePoint a, PlanePoint b) {
    static const char* kClasses[] = {"residential", "tertiary", "service", "unclassified"};
    const bool paved = rng_.uniform() < spec_.road_surface_mix;
    return add_road(a, b, kClasses[rng_.pick(4)], paved);
  }

  void add_building(Polygon footprint) {
    buildings_.push_back({std::move(footprint), std::round(rng_.between(0.7, 1.0) * 1000) / 1000});
  }

  // Blocks in columns [c0, c1); one block per cell, streets on cell edges.
  void formal(std::size_t c0, std::size_t c1) {
    const double cs = spec_.cell_size;
    const std::size_t rows = cells_;
    // horizontal[k][a]: edge along y_at(k) for block column a
    std::vector<std::vector<std::size_t>> horizontal(rows + 1, std::vector<std::size_t>(c1 - c0));
    std::vector<std::vector<std::size_t>> vertical(c1 - c0 + 1, std::vector<std::size_t>(rows));
    for (std::size_t k = 0; k <= rows; ++k) {
      for (std::size_t a = c0; a < c1; ++a) {
        horizontal[k][a - c0] = add_motorable({x_at(a), y_at(k)}, {x_at(a + 1), y_at(k)});
      }
    }
    for (std::size_t a = c0; a <= c1; ++a) {
      for (std::size_t b = 0; b < rows; ++b) {
        vertical[a - c0][b] = add_motorable({x_at(a), y_at(b)}, {x_at(a), y_at(b + 1)});
      }
    }

    // Offsets are scaled from a 100 m block and keep a >= 2 m margin between
    // the intended street and any other edge, so the nearest road is known.
    const double s = cs / 100.0;
    const double centers[4] = {13 * s, 38 * s, 62 * s, 87 * s};
    const double jitter[4] = {1.5 * s, 2 * s, 2 * s, 1.5 * s};
    for (std::size_t a = c0; a < c1; ++a) {
      for (std::size_t b = 0; b < rows; ++b) {
        std::size_t paved = 0;
        std::size_t unpaved = 0;
        for (int side = 0; side < 2; ++side) {  // 0 = south row, 1 = north row
          for (int k = 0; k < 4; ++k) {
            const double w = rng_.between(9, 12) * s;
            const double d = rng_.between(9, 12) * s;
            const double cx = centers[k] + rng_.between(-jitter[k], jitter[k]);
            const double cy = side == 0 ? 12 * s + d / 2 : cs - 12 * s - d / 2;
            std::size_t road;
            if (k == 0) {
              road = vertical[a - c0][b];
            } else if (k == 3) {
              road = vertical[a + 1 - c0][b];
            } else {
              road = horizontal[side == 0 ? b : b + 1][a - c0];
            }
            (roads_[road].surface == Surface::paved ? paved : unpaved) += 1;
            const double ox = x_at(a);
            const double oy = y_at(b);
            add_building(rectangle(ox + cx - w / 2, oy + cy - d / 2, ox + cx + w / 2, oy + cy + d / 2));
          }
        }
        expected_.push_back({{spec_.origin_cell.i + static_cast<std::int64_t>(a),
                              spec_.origin_cell.j + static_cast<std::int64_t>(b)},
                             modal_surface(paved, unpaved) == Surface::paved
                                 ? DeprivationLevel::low
                                 : DeprivationLevel::medium,
                             false});
      }
    }
  }

  // Contiguous structures in columns [c0, c1), one road along the south edge.
  void informal(std::size_t c0, std::size_t c1, bool extend_west) {
    const double cs = spec_.cell_size;
    const double x_start = x_at(c0);
    const double x_end = x_at(c1);
    add_motorable({extend_west ? x_start - cs : x_start, y_at(0)}, {x_end + cs, y_at(0)});
    // A footpath through the cluster; it is not motorable and must be ignored.
    add_road({x_start + (x_end - x_start) / 2 + 0.5, y_at(0)},
             {x_start + (x_end - x_start) / 2 + 0.5, y_at(cells_)}, "footway", false);

    constexpr double kPitch = 9.0;
    constexpr double kSize = 7.0;
    constexpr double kJitter = 0.75;
    const double y_top = y_at(cells_) - 1.0;
    for (double y0 = y_at(0) + 3.0; y0 + kSize <= y_top; y0 += kPitch) {
      for (double x0 = x_start + 1.0; x0 + kSize <= x_end - 1.0; x0 += kPitch) {
        if (rng_.uniform() < 0.08) continue;  // occasional open plot
        const double dx = rng_.between(-kJitter, kJitter);
        add_building(rectangle(x0 + dx, y0, x0 + dx + kSize, y0 + kSize));
      }
    }
    for (std::size_t a = c0; a < c1; ++a) {
      for (std::size_t b = 0; b < cells_; ++b) {
        expected_.push_back({{spec_.origin_cell.i + static_cast<std::int64_t>(a),
                              spec_.origin_cell.j + static_cast<std::int64_t>(b)},
                             DeprivationLevel::high, false});
      }
    }
  }

  Scene finish(std::size_t seam) {
    Scene scene{spec_, std::move(buildings_), std::move(roads_),
                rectangle(x_at(0), y_at(0), x_at(cells_), y_at(cells_)), std::move(expected_)};
    const auto last = static_cast<std::int64_t>(cells_) - 1;
    for (auto& e : scene.expected) {
      const std::int64_t a = e.cell.i - spec_.origin_cell.i;
      const std::int64_t b = e.cell.j - spec_.origin_cell.j;
      e.interior = a > 0 && b > 0 && a < last && b < last;
      if (seam > 0 && (a == static_cast<std::int64_t>(seam) || a + 1 == static_cast<std::int64_t>(seam))) {
        e.interior = false;
      }
    }
    std::sort(scene.expected.begin(), scene.expected.end(),
              [](const ExpectedCell& x, const ExpectedCell& y) { return x.cell < y.cell; });
    return scene;
  }

 private:
  SceneSpec spec_;
  std::size_t cells_;
  Rng rng_;
  PlanePoint origin_;
  std::vector<SceneBuilding> buildings_;
  std::vector<SceneRoad> roads_;
  std::vector<ExpectedCell> expected_;
};

}  // namespace

std::string_view to_string(Layout layout) noexcept {
  switch (layout) {
    case Layout::formal_grid:
      return "formal_grid";
    case Layout::informal_cluster:
      return "informal_cluster";
    case Layout::mixed:
      break;
  }
  return "mixed";
}

std::optional<Layout> parse_layout(std::string_view s) {
  if (s == "formal_grid") return Layout::formal_grid;
  if (s == "informal_cluster") return Layout::informal_cluster;
  if (s == "mixed") return Layout::mixed;
  return std::nullopt;
}

Scene generate(const SceneSpec& spec) {
  if (!(spec.cell_size > 0)) throw std::invalid_argument("cell size must be positive");
  if (!(spec.road_surface_mix >= 0.0 && spec.road_surface_mix <= 1.0)) {
    throw std::invalid_argument("road_surface_mix must be in [0, 1]");
  }
  const double n = std::round(spec.extent / spec.cell_size);
  const std::size_t min_cells = spec.layout == Layout::mixed ? 2 : 1;
  if (!(n >= static_cast<double>(min_cells))) throw std::invalid_argument("scene extent too small");
  const auto cells = static_cast<std::size_t>(n);

  Builder b(spec, cells);
  switch (spec.layout) {
    case Layout::formal_grid:
      b.formal(0, cells);
      return b.finish(0);
    case Layout::informal_cluster:
      b.informal(0, cells, true);
      return b.finish(0);
    case Layout::mixed:
      break;
  }
  const std::size_t seam = cells / 2;
  b.formal(0, seam);
  b.informal(seam, cells, false);
  return b.finish(seam);
}

std::string Scene::buildings_geojson() const {
  json features = json::array();
  for (const auto& bld : buildings) {
    features.push_back({{"type", "Feature"},
                        {"geometry", polygon_json(bld.footprint)},
                        {"properties", {{"confidence", bld.confidence}}}});
  }
  return json{{"type", "FeatureCollection"}, {"features", std::move(features)}}.dump() + "\n";
}

std::string Scene::roads_geojson() const {
  json features = json::array();
  for (const auto& r : roads) {
    features.push_back(
        {{"type", "Feature"},
         {"geometry", {{"type", "LineString"}, {"coordinates", ring_json(r.geometry.vertices())}}},
         {"properties", {{"class", r.road_class}, {"surface", r.surface_tag}}}});
  }
  return json{{"type", "FeatureCollection"}, {"features", std::move(features)}}.dump() + "\n";
}

std::string Scene::boundary_geojson() const {
  json feature = {{"type", "Feature"}, {"geometry", polygon_json(boundary)}, {"properties", json::object()}};
  return json{{"type", "FeatureCollection"}, {"features", json::array({feature})}}.dump() + "\n";
}

std::string Scene::expected_csv() const {
  std::ostringstream out;
  out << "i,j,level,interior\n";
  for (const auto& e : expected) {
    out << e.cell.i << ',' << e.cell.j << ',' << roadaccess::to_string(e.level) << ','
        << (e.interior ? "true" : "false") << '\n';
  }
  return std::move(out).str();
}

void write_scene(const Scene& scene, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto write = [&](const char* name, const std::string& text) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + (dir / name).string());
    out << text;
  };
  write("buildings.geojson", scene.buildings_geojson());
  write("roads.geojson", scene.roads_geojson());
  write("boundary.geojson", scene.boundary_geojson());
  write("expected.csv", scene.expected_csv());
}

}  // namespace roadaccess::synth

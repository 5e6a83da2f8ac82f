#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "roadaccess/access_metrics.hpp"
#include "roadaccess/synth.hpp"
#include "support/oracles.hpp"

namespace roadaccess {
namespace {

Polygon square(double x0, double y0, double x1, double y1) {
  return Polygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

struct Fixture {
  std::vector<Building> buildings;
  std::vector<RoadSegment> roads;

  std::vector<BuildingAccess> run(unsigned workers = 1) const {
    const auto seg = SegmentIndex::build(roads);
    const auto poly = PolygonIndex::build(buildings);
    return compute_access(buildings, seg, poly, workers);
  }
};

// Source building centred on the origin, road along y = 50.
Fixture connector_fixture() {
  Fixture f;
  f.buildings.push_back(Building::make(1, square(-2, -2, 2, 2)));
  f.roads.push_back({10, Polyline({{-100, 50}, {100, 50}}), "residential", Surface::paved});
  return f;
}

TEST(Connector, RunsFromCentroidToFootOfPerpendicular) {
  const auto f = connector_fixture();
  const auto out = f.run();
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].connector.start, (PlanePoint{0, 0}));
  EXPECT_EQ(out[0].connector.end, (PlanePoint{0, 50}));
  EXPECT_DOUBLE_EQ(out[0].metrics.road_distance, 50.0);
  EXPECT_EQ(out[0].metrics.road_id, 10);
  EXPECT_EQ(out[0].metrics.nearest_surface, Surface::paved);
  EXPECT_EQ(out[0].metrics.obstruction_count, 0u);
}

TEST(Obstructions, OneBlockerOnConnector) {
  auto f = connector_fixture();
  f.buildings.push_back(Building::make(2, square(-5, 20, 5, 30)));
  const auto out = f.run();
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].metrics.building_id, 1);
  EXPECT_EQ(out[0].metrics.obstruction_count, 1u);
}

TEST(Obstructions, OwnFootprintIsNeverCounted) {
  auto f = connector_fixture();
  f.buildings[0] = Building::make(1, square(-20, -20, 20, 40));
  EXPECT_EQ(f.run()[0].metrics.obstruction_count, 0u);
}

TEST(Obstructions, BlockerOffToTheSideIsNotCounted) {
  auto f = connector_fixture();
  f.buildings.push_back(Building::make(2, square(6, 20, 16, 30)));
  EXPECT_EQ(f.run()[0].metrics.obstruction_count, 0u);
}

TEST(Obstructions, RoadSideEndpointTouchCounts) {
  auto f = connector_fixture();
  // The footprint's bottom edge touches the road exactly where the connector ends.
  f.buildings.push_back(Building::make(2, square(-5, 50, 5, 60)));
  EXPECT_EQ(f.run()[0].metrics.obstruction_count, 1u);
}

TEST(Obstructions, ZeroLengthConnectorCountsNothing) {
  Fixture f;
  f.roads.push_back({0, Polyline({{-10, 0}, {10, 0}}), "residential", Surface::unpaved});
  f.buildings.push_back(Building::make(0, square(-1, -1, 1, 1)));
  f.buildings.push_back(Building::make(1, square(-3, -3, 3, 3)));  // overlaps the source
  const auto out = f.run();
  EXPECT_EQ(out[0].metrics.road_distance, 0.0);
  EXPECT_EQ(out[0].metrics.obstruction_count, 0u);
}

TEST(Obstructions, MultipartBuildingCountedOncePerPart) {
  auto f = connector_fixture();
  f.buildings.push_back(Building::make(2, square(-5, 10, 5, 15)));
  f.buildings.push_back(Building::make(3, square(-5, 30, 5, 35)));
  EXPECT_EQ(f.run()[0].metrics.obstruction_count, 2u);
}

TEST(Surface, TakenFromNearestRoad) {
  Fixture f;
  f.buildings.push_back(Building::make(0, square(-1, -1, 1, 1)));
  f.roads.push_back({0, Polyline({{-10, 30}, {10, 30}}), "residential", Surface::paved});
  f.roads.push_back({1, Polyline({{-10, -20}, {10, -20}}), "residential", Surface::unknown});
  EXPECT_EQ(f.run()[0].metrics.nearest_surface, Surface::unknown);
}

std::vector<BuildingMetrics> metrics_of(const std::vector<BuildingAccess>& a) {
  std::vector<BuildingMetrics> m;
  for (const auto& x : a) m.push_back(x.metrics);
  return m;
}

void expect_same(const std::vector<BuildingMetrics>& a, const std::vector<BuildingMetrics>& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].building_id, b[k].building_id);
    EXPECT_EQ(a[k].obstruction_count, b[k].obstruction_count) << "building " << a[k].building_id;
    EXPECT_EQ(a[k].nearest_surface, b[k].nearest_surface);
    EXPECT_EQ(a[k].road_id, b[k].road_id);
    EXPECT_DOUBLE_EQ(a[k].road_distance, b[k].road_distance);
  }
}

TEST(Scenes, FormalGridHousesAreUnobstructed) {
  const auto scene = synth::generate({.seed = 3, .layout = synth::Layout::formal_grid, .extent = 400.0});
  const auto in = testing::scene_inputs(scene);
  const Fixture f{in.buildings, in.roads};
  for (const auto& a : f.run()) EXPECT_EQ(a.metrics.obstruction_count, 0u);
}

TEST(Scenes, InformalClusterInteriorIsObstructed) {
  const auto scene = synth::generate({.seed = 3, .layout = synth::Layout::informal_cluster, .extent = 300.0});
  const auto in = testing::scene_inputs(scene);
  const Fixture f{in.buildings, in.roads};
  const auto out = f.run();
  const auto deep = std::count_if(out.begin(), out.end(), [](const auto& a) { return a.metrics.road_distance > 30.0; });
  const auto deep_blocked = std::count_if(out.begin(), out.end(), [](const auto& a) {
    return a.metrics.road_distance > 30.0 && a.metrics.obstruction_count >= 2;
  });
  ASSERT_GT(deep, 0);
  // Dropped structures leave a few clear lanes.
  EXPECT_GE(static_cast<double>(deep_blocked), 0.95 * static_cast<double>(deep));
}

TEST(Scenes, MatchesBruteForceOnRandomScenes) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto s = testing::random_scene(seed, 200, 30);
    const Fixture f{s.buildings, s.roads};
    expect_same(metrics_of(f.run()), testing::brute_metrics(s.buildings, s.roads));
  }
}

TEST(Invariants, WorkerCountDoesNotChangeResults) {
  const auto s = testing::random_scene(42, 1500, 40);
  const Fixture f{s.buildings, s.roads};
  const auto one = metrics_of(f.run(1));
  expect_same(one, metrics_of(f.run(3)));
  expect_same(one, metrics_of(f.run(8)));
}

TEST(Invariants, InputPermutation) {
  auto s = testing::random_scene(8, 300, 25);
  const Fixture f{s.buildings, s.roads};
  const auto base = metrics_of(f.run());
  std::mt19937_64 rng(1);
  std::shuffle(s.buildings.begin(), s.buildings.end(), rng);
  // Road order is left intact: segment ids, and so tie breaks, follow it.
  const Fixture g{s.buildings, s.roads};
  expect_same(base, metrics_of(g.run()));
}

std::vector<Building> transformed(const std::vector<Building>& bs, double scale, PlanePoint shift) {
  std::vector<Building> out;
  for (const auto& b : bs) {
    std::vector<PlanePoint> ring;
    for (const auto& p : b.footprint.exterior()) ring.push_back({p.x * scale + shift.x, p.y * scale + shift.y});
    out.push_back(Building::make(b.building_id, Polygon(ring)));
  }
  return out;
}

std::vector<RoadSegment> transformed(const std::vector<RoadSegment>& rs, double scale, PlanePoint shift) {
  std::vector<RoadSegment> out;
  for (const auto& r : rs) {
    std::vector<PlanePoint> pts;
    for (const auto& p : r.geometry.vertices()) pts.push_back({p.x * scale + shift.x, p.y * scale + shift.y});
    out.push_back({r.road_id, Polyline(pts), r.road_class, r.surface});
  }
  return out;
}

void expect_same_counts(const std::vector<BuildingMetrics>& a, const std::vector<BuildingMetrics>& b) {
  ASSERT_EQ(a.size(), b.size());
  std::size_t differ = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    differ += a[k].obstruction_count != b[k].obstruction_count || a[k].road_id != b[k].road_id;
  }
  // Exact geometric coincidences can round differently after transformation.
  EXPECT_LE(differ, a.size() / 200);
}

TEST(Invariants, Translation) {
  const auto s = testing::random_scene(12, 400, 25);
  const Fixture f{s.buildings, s.roads};
  const PlanePoint shift{1024.0, -2048.0};  // powers of two keep the sums exact-ish
  const Fixture g{transformed(s.buildings, 1.0, shift), transformed(s.roads, 1.0, shift)};
  expect_same_counts(metrics_of(f.run()), metrics_of(g.run()));
}

TEST(Invariants, UniformScaling) {
  const auto s = testing::random_scene(13, 400, 25);
  const Fixture f{s.buildings, s.roads};
  const Fixture g{transformed(s.buildings, 4.0, {0, 0}), transformed(s.roads, 4.0, {0, 0})};
  const auto a = metrics_of(f.run());
  const auto b = metrics_of(g.run());
  expect_same_counts(a, b);
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(b[k].road_distance, 4.0 * a[k].road_distance, 1e-9);
}

TEST(Invariants, FarAwayBuildingOnlyAddsItself) {
  auto s = testing::random_scene(21, 300, 20);
  const Fixture f{s.buildings, s.roads};
  const auto base = metrics_of(f.run());
  s.buildings.push_back(Building::make(100000, square(9000, 9000, 9010, 9010)));
  const Fixture g{s.buildings, s.roads};
  auto more = metrics_of(g.run());
  ASSERT_EQ(more.size(), base.size() + 1);
  EXPECT_EQ(more.back().building_id, 100000);
  more.pop_back();
  expect_same(base, more);
}

TEST(Output, MetricsCsvHeaderAndRows) {
  auto f = connector_fixture();
  f.buildings.push_back(Building::make(2, square(-5, 20, 5, 30)));
  std::ostringstream out;
  write_building_metrics_csv(out, compute_all(f.buildings, SegmentIndex::build(f.roads),
                                              PolygonIndex::build(f.buildings)));
  EXPECT_EQ(out.str(),
            "building_id,obstruction_count,nearest_surface,road_distance,road_id\n"
            "1,1,paved,50,10\n"
            "2,0,paved,25,10\n");
}

TEST(Output, ConnectorsGeojsonHasOneFeaturePerBuilding) {
  auto f = connector_fixture();
  f.buildings.push_back(Building::make(2, square(-5, 20, 5, 30)));
  std::ostringstream out;
  write_connectors_geojson(out, f.run());
  const std::string text = out.str();
  std::size_t n = 0;
  for (std::size_t pos = 0; (pos = text.find("\"LineString\"", pos)) != std::string::npos; ++pos) ++n;
  EXPECT_EQ(n, 2u);
}

}  // namespace
}  // namespace roadaccess

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "roadaccess/errors.hpp"
#include "roadaccess/spatial_index.hpp"
#include "support/oracles.hpp"

namespace roadaccess {
namespace {

RoadSegment road(std::int64_t id, std::vector<PlanePoint> pts, Surface s = Surface::paved) {
  return {id, Polyline(std::move(pts)), "residential", s};
}

TEST(SegmentIndex, EmptyRoadSetIsConfigError) {
  EXPECT_THROW(SegmentIndex::build({}), ConfigError);
}

TEST(SegmentIndex, ThreeVertexRoadYieldsTwoEntries) {
  const std::vector<RoadSegment> roads{road(7, {{0, 0}, {10, 0}, {10, 10}})};
  const auto index = SegmentIndex::build(roads);
  ASSERT_EQ(index.size(), 2u);
  EXPECT_EQ(index.entries()[0].road_id, 7);
  EXPECT_EQ(index.entries()[1].road_id, 7);
  EXPECT_EQ(index.entries()[0].segment.b, (PlanePoint{10, 0}));
  EXPECT_EQ(index.entries()[1].segment.a, (PlanePoint{10, 0}));
  EXPECT_EQ(index.entries()[0].segment_id, 0u);
  EXPECT_EQ(index.entries()[1].segment_id, 1u);
}

TEST(SegmentIndex, EverySegmentFoundByItsOwnBox) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 5000);
  std::vector<RoadSegment> roads;
  for (int k = 0; k < 10000; ++k) {
    const PlanePoint a{u(rng), u(rng)};
    roads.push_back(road(k, {a, {a.x + u(rng) / 100 + 0.01, a.y + u(rng) / 100}}));
  }
  const auto index = SegmentIndex::build(roads);
  ASSERT_EQ(index.size(), 10000u);
  BoxTree tree([&] {
    std::vector<BBox> boxes;
    for (const auto& e : index.entries()) boxes.push_back(BBox::of(e.segment));
    return boxes;
  }());
  for (std::size_t k = 0; k < tree.size(); ++k) {
    bool found = false;
    const BBox target = tree.item_box(k);
    tree.query([&](const BBox& b) { return b.intersects(target); },
               [&](std::size_t item) { found = found || item == k; });
    ASSERT_TRUE(found) << k;
  }
}

TEST(SegmentIndex, DuplicateGeometryKeepsBothEntries) {
  const std::vector<RoadSegment> roads{road(4, {{0, 0}, {10, 0}}), road(2, {{0, 0}, {10, 0}})};
  const auto index = SegmentIndex::build(roads);
  EXPECT_EQ(index.size(), 2u);
  const auto hit = index.nearest({5, 3});
  EXPECT_EQ(hit.road_id, 2);  // equal distance, lower road id wins
  EXPECT_DOUBLE_EQ(hit.distance, 3.0);
}

TEST(SegmentIndex, EquidistantRoadsBreakTiesByRoadId) {
  const std::vector<RoadSegment> roads{road(9, {{-10, 5}, {10, 5}}), road(3, {{-10, -5}, {10, -5}})};
  const auto index = SegmentIndex::build(roads);
  const auto hit = index.nearest({0, 0});
  EXPECT_EQ(hit.road_id, 3);
  EXPECT_EQ(hit.point, (PlanePoint{0, -5}));
}

TEST(SegmentIndex, SharedVertexTieGoesToLowerSegment) {
  const std::vector<RoadSegment> roads{road(1, {{0, 0}, {10, 0}, {10, 10}})};
  const auto hit = SegmentIndex::build(roads).nearest({11, -1});
  EXPECT_EQ(hit.segment_id, 0u);
  EXPECT_EQ(hit.point, (PlanePoint{10, 0}));
}

TEST(SegmentIndex, SurfaceLookup) {
  const std::vector<RoadSegment> roads{road(5, {{0, 0}, {1, 0}}, Surface::unpaved),
                                       road(1, {{0, 1}, {1, 1}}, Surface::unknown)};
  const auto index = SegmentIndex::build(roads);
  EXPECT_EQ(index.surface_of(5), Surface::unpaved);
  EXPECT_EQ(index.surface_of(1), Surface::unknown);
  EXPECT_THROW(index.surface_of(2), std::out_of_range);
}

TEST(SegmentIndex, NearestMatchesBruteForce) {
  const auto scene = testing::random_scene(2024, 0, 1000, 2000.0);
  const auto index = SegmentIndex::build(scene.roads);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-200, 2200);
  for (int q = 0; q < 1000; ++q) {
    const PlanePoint p{u(rng), u(rng)};
    const auto fast = index.nearest(p);
    const auto slow = testing::brute_nearest_road(p, scene.roads);
    ASSERT_EQ(fast.distance, slow.distance) << q;
    ASSERT_EQ(fast.road_id, slow.road_id) << q;
    ASSERT_EQ(fast.segment_id, slow.segment_id) << q;
    ASSERT_EQ(fast.point, slow.point) << q;
  }
}

TEST(SegmentIndex, QueriesAreDeterministic) {
  const auto scene = testing::random_scene(77, 0, 300);
  const auto a = SegmentIndex::build(scene.roads);
  const auto b = SegmentIndex::build(scene.roads);
  for (double x = 0; x < 500; x += 37.5) {
    for (double y = 0; y < 500; y += 41.25) {
      const auto ha = a.nearest({x, y});
      const auto hb = b.nearest({x, y});
      ASSERT_EQ(ha.segment_id, hb.segment_id);
      ASSERT_EQ(ha.point, hb.point);
    }
  }
}

TEST(PolygonIndex, CandidatesAreSupersetOfTrueIntersections) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto scene = testing::random_scene(seed, 60, 1, 200.0);
    const auto index = PolygonIndex::build(scene.buildings);
    std::mt19937_64 rng(seed + 1000);
    std::uniform_real_distribution<double> u(0, 200);
    const Segment s{{u(rng), u(rng)}, {u(rng), u(rng)}};
    const auto cands = index.candidates_for_segment(s);
    ASSERT_TRUE(std::is_sorted(cands.begin(), cands.end()));
    const std::set<std::int64_t> cand_set(cands.begin(), cands.end());
    ASSERT_EQ(cand_set.size(), cands.size());
    for (const auto& b : scene.buildings) {
      if (segment_intersects_polygon(s, b.footprint)) {
        ASSERT_TRUE(cand_set.count(b.building_id)) << "seed " << seed << " building " << b.building_id;
      }
    }
  }
}

TEST(PolygonIndex, CandidateTouchingAtCorner) {
  std::vector<Building> bs{Building::make(0, Polygon({{0, 0}, {10, 0}, {10, 10}, {0, 10}}))};
  const auto index = PolygonIndex::build(bs);
  EXPECT_EQ(index.candidates_for_segment({{10, 10}, {20, 20}}).size(), 1u);
  EXPECT_TRUE(index.candidates_for_segment({{11, 0}, {20, -5}}).empty());
}

TEST(PolygonIndex, EmptyIndexHasNoCandidates) {
  const auto index = PolygonIndex::build({});
  EXPECT_TRUE(index.candidates_for_segment({{0, 0}, {1, 1}}).empty());
}

}  // namespace
}  // namespace roadaccess

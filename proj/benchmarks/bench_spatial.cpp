#include <benchmark/benchmark.h>

#include <random>

#include "roadaccess/access_metrics.hpp"
#include "roadaccess/spatial_index.hpp"
#include "roadaccess/synth.hpp"
#include "support/oracles.hpp"

namespace {

using namespace roadaccess;

// Short street-like segments scattered over a 5 km square.
std::vector<RoadSegment> street_segments(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> pos(0, 5000), step(-60, 60);
  std::vector<RoadSegment> roads;
  for (std::size_t k = 0; k < n; ++k) {
    const PlanePoint a{pos(rng), pos(rng)};
    roads.push_back({static_cast<std::int64_t>(k), Polyline({a, {a.x + step(rng), a.y + step(rng)}}), "residential",
                     Surface::paved});
  }
  return roads;
}

void BM_NearestRoad(benchmark::State& state) {
  const auto roads = street_segments(static_cast<std::size_t>(state.range(0)));
  const auto index = SegmentIndex::build(roads);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 5000);
  std::vector<PlanePoint> queries(4096);
  for (auto& q : queries) q = {u(rng), u(rng)};
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(index.nearest(queries[k++ & 4095]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_NearestRoad)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_NearestRoadBruteForce(benchmark::State& state) {
  const auto roads = street_segments(static_cast<std::size_t>(state.range(0)));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 5000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(testing::brute_nearest_road({u(rng), u(rng)}, roads));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_NearestRoadBruteForce)->Arg(1000)->Arg(10000);

void BM_ComputeAllInformal(benchmark::State& state) {
  synth::SceneSpec spec;
  spec.layout = synth::Layout::informal_cluster;
  spec.extent = static_cast<double>(state.range(0));
  const auto in = testing::scene_inputs(synth::generate(spec));
  const auto roads = SegmentIndex::build(in.roads);
  const auto polys = PolygonIndex::build(in.buildings);
  const auto workers = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_all(in.buildings, roads, polys, workers));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(in.buildings.size()));
}
BENCHMARK(BM_ComputeAllInformal)->Args({500, 1})->Args({1000, 1})->Args({1000, 4})->Unit(benchmark::kMillisecond);

void BM_SegmentIntersectsPolygon(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-30, 30);
  std::vector<Polygon> polys;
  std::vector<Segment> segs;
  for (int k = 0; k < 1024; ++k) {
    polys.push_back(testing::random_footprint(rng, {0, 0}, 5, 30));
    segs.push_back({{u(rng), u(rng)}, {u(rng), u(rng)}});
  }
  std::size_t k = 0;
  for (auto _ : state) {
    const std::size_t i = k++ & 1023;
    benchmark::DoNotOptimize(segment_intersects_polygon(segs[i], polys[i]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SegmentIntersectsPolygon);

}  // namespace

BENCHMARK_MAIN();

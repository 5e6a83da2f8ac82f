#include "roadaccess/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace roadaccess {

CellId cell_of(const PlanePoint& p, double cell_size) noexcept {
  return {static_cast<std::int64_t>(std::floor(p.x / cell_size)),
          static_cast<std::int64_t>(std::floor(p.y / cell_size))};
}

PlanePoint cell_origin(const CellId& c, double cell_size) noexcept {
  return {static_cast<double>(c.i) * cell_size, static_cast<double>(c.j) * cell_size};
}

Surface modal_surface(std::size_t paved, std::size_t unpaved) noexcept {
  return paved > unpaved ? Surface::paved : Surface::unpaved;
}

void CellTally::add(std::size_t obstructions, Surface surface) noexcept {
  ++buildings;
  obstruction_sum += obstructions;
  if (surface == Surface::paved) ++paved;
  if (surface == Surface::unpaved) ++unpaved;
}

void CellTally::merge(const CellTally& o) noexcept {
  buildings += o.buildings;
  obstruction_sum += o.obstruction_sum;
  paved += o.paved;
  unpaved += o.unpaved;
}

CellAggregate CellTally::finish(const CellId& cell) const {
  CellAggregate agg{cell, buildings, std::nullopt, std::nullopt};
  if (buildings > 0) {
    agg.mean_obstruction = static_cast<double>(obstruction_sum) / static_cast<double>(buildings);
    agg.modal_surface = modal_surface(paved, unpaved);
  }
  return agg;
}

CellMap aggregate(std::span<const BuildingMetrics> metrics, std::span<const Building> buildings,
                  double cell_size, unsigned workers) {
  std::unordered_map<std::int64_t, std::size_t> position;
  position.reserve(buildings.size());
  for (std::size_t k = 0; k < buildings.size(); ++k) position.emplace(buildings[k].building_id, k);

  std::vector<CellId> cells(metrics.size());
  for (std::size_t k = 0; k < metrics.size(); ++k) {
    const auto it = position.find(metrics[k].building_id);
    if (it == position.end()) {
      throw std::invalid_argument("metric without a matching building");
    }
    cells[k] = cell_of(buildings[it->second].centroid, cell_size);
  }

  auto tally_range = [&](std::size_t begin, std::size_t end) {
    std::map<CellId, CellTally> partial;
    for (std::size_t k = begin; k < end; ++k) {
      partial[cells[k]].add(metrics[k].obstruction_count, metrics[k].nearest_surface);
    }
    return partial;
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n = metrics.size();
  const std::size_t parts = std::min<std::size_t>(workers, std::max<std::size_t>(1, n / 4096));
  std::vector<std::map<CellId, CellTally>> partials(parts);
  if (parts == 1) {
    partials[0] = tally_range(0, n);
  } else {
    const std::size_t chunk = (n + parts - 1) / parts;
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < parts; ++t) {
      pool.emplace_back([&, t] {
        partials[t] = tally_range(std::min(n, t * chunk), std::min(n, (t + 1) * chunk));
      });
    }
  }

  std::map<CellId, CellTally> merged;
  for (const auto& partial : partials) {
    for (const auto& [cell, tally] : partial) merged[cell].merge(tally);
  }
  CellMap out;
  for (const auto& [cell, tally] : merged) out.emplace(cell, tally.finish(cell));
  return out;
}

std::vector<CellId> enumerate_cells(const Boundary& boundary, double cell_size) {
  const BBox& box = boundary.bbox();
  const CellId lo = cell_of({box.min_x, box.min_y}, cell_size);
  const CellId hi = cell_of({box.max_x, box.max_y}, cell_size);
  std::vector<CellId> out;
  for (std::int64_t i = lo.i; i <= hi.i; ++i) {
    for (std::int64_t j = lo.j; j <= hi.j; ++j) {
      const PlanePoint o = cell_origin({i, j}, cell_size);
      if (boundary.contains({o.x + cell_size / 2, o.y + cell_size / 2})) out.push_back({i, j});
    }
  }
  return out;
}

std::vector<CellId> empty_cells(const Boundary& boundary, const CellMap& aggregates,
                                double cell_size) {
  std::vector<CellId> out;
  for (const auto& c : enumerate_cells(boundary, cell_size)) {
    if (!aggregates.contains(c)) out.push_back(c);
  }
  return out;
}

}  // namespace roadaccess

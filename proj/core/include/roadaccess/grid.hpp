#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "roadaccess/access_metrics.hpp"
#include "roadaccess/features.hpp"
#include "roadaccess/geo.hpp"
#include "roadaccess/types.hpp"

namespace roadaccess {

inline constexpr double kDefaultCellSize = 100.0;

/// Half-open floor division anchored at the projection origin.
CellId cell_of(const PlanePoint& p, double cell_size = kDefaultCellSize) noexcept;

/// Lower-left corner of a cell in projected meters.
PlanePoint cell_origin(const CellId& c, double cell_size = kDefaultCellSize) noexcept;

struct CellAggregate {
  CellId cell;
  std::size_t building_count = 0;
  std::optional<double> mean_obstruction;  ///< absent iff building_count == 0
  std::optional<Surface> modal_surface;    ///< paved or unpaved; absent iff empty
};

/// Ties, and cells with no paved/unpaved evidence at all, resolve to unpaved.
Surface modal_surface(std::size_t paved, std::size_t unpaved) noexcept;

/// Running per-cell tally. Merging is associative and commutative.
struct CellTally {
  std::size_t buildings = 0;
  std::uint64_t obstruction_sum = 0;
  std::size_t paved = 0;
  std::size_t unpaved = 0;

  void add(std::size_t obstructions, Surface surface) noexcept;
  void merge(const CellTally& o) noexcept;
  CellAggregate finish(const CellId& cell) const;
};

using CellMap = std::map<CellId, CellAggregate>;

/// Assigns each building to the cell holding its centroid. Every metric
/// must match a building id in `buildings` (std::invalid_argument otherwise).
CellMap aggregate(std::span<const BuildingMetrics> metrics, std::span<const Building> buildings,
                  double cell_size = kDefaultCellSize, unsigned workers = 1);

/// Cells whose center lies inside the boundary, scanned over its bounding box.
std::vector<CellId> enumerate_cells(const Boundary& boundary, double cell_size = kDefaultCellSize);

/// Cells of `enumerate_cells` that hold no aggregate.
std::vector<CellId> empty_cells(const Boundary& boundary, const CellMap& aggregates,
                                double cell_size = kDefaultCellSize);

}  // namespace roadaccess

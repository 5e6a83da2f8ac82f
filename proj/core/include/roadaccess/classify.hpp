#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "roadaccess/grid.hpp"
#include "roadaccess/types.hpp"

namespace roadaccess {

inline constexpr double kDefaultThreshold = 1.0;

/// Empty cells are low. Otherwise a mean obstruction strictly above the
/// threshold is high; at or below it the modal surface decides (paved ->
/// low, unpaved -> medium).
DeprivationLevel classify_cell(const CellAggregate& agg, double threshold = kDefaultThreshold);

struct ClassifiedCell {
  CellId cell;
  DeprivationLevel level = DeprivationLevel::low;
  std::size_t building_count = 0;
  std::optional<double> mean_obstruction;
  std::optional<Surface> modal_surface;

  bool empty() const noexcept { return building_count == 0; }
};

/// One entry per aggregate plus one per empty cell, sorted by cell id.
/// Empty cells that also appear in `aggregates` are counted once.
std::vector<ClassifiedCell> classify_all(const CellMap& aggregates,
                                         std::span<const CellId> empty_cells,
                                         double threshold = kDefaultThreshold);

struct LevelDistribution {
  bool include_empty = false;
  std::size_t total = 0;
  std::array<std::size_t, 3> counts{};
  std::array<double, 3> percent{};  ///< 0 when total == 0
};

/// Level shares; with include_empty = false, cells without buildings are
/// removed before counting.
LevelDistribution distribution(std::span<const ClassifiedCell> cells, bool include_empty);

/// CSV: i,j,level,building_count,mean_obstruction,modal_surface,empty
/// (blank mean/surface for empty cells).
void write_cells_csv(std::ostream& out, std::span<const ClassifiedCell> cells);

/// Reads the format written by write_cells_csv. Throws DataError.
std::vector<ClassifiedCell> read_cells_csv(std::istream& in);

/// Cell polygons with Mollweide corners reprojected to lon/lat.
void write_cells_geojson(std::ostream& out, std::span<const ClassifiedCell> cells,
                         double cell_size = kDefaultCellSize);

}  // namespace roadaccess

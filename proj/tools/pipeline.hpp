#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "roadaccess/access_metrics.hpp"
#include "roadaccess/classify.hpp"
#include "roadaccess/evaluate.hpp"
#include "roadaccess/features.hpp"
#include "roadaccess/ingest.hpp"

namespace roadaccess::cli {

namespace fs = std::filesystem;

struct PipelinePaths {
  fs::path buildings;
  fs::path roads;
  fs::path boundary;
  fs::path validations;
  fs::path out = "out";
  fs::path cells;  ///< classified cells for `evaluate`; defaults to <out>/cells.csv
};

struct PipelineConfig {
  PipelinePaths paths;
  std::string surface_property = "surface";
  std::optional<double> min_confidence;
  double threshold = kDefaultThreshold;
  double cell_size = kDefaultCellSize;
  bool include_empty_in_distribution = false;
  std::optional<unsigned> workers;

  /// Reads a JSON config; relative paths resolve against the file's folder.
  /// Throws ConfigError on unknown keys or wrong types.
  static PipelineConfig from_json_file(const fs::path& path);

  unsigned worker_count() const noexcept;
  fs::path cells_path() const;
};

enum class Command { run, evaluate, export_connectors };

/// Parameter ranges and existence of the inputs `command` needs.
void validate(const PipelineConfig& config, Command command);

struct StageCounts {
  LoadReport buildings;
  LoadReport roads;
  std::size_t road_segments_loaded = 0;
  std::size_t road_segments_motorable = 0;
  std::size_t road_segments_kept = 0;
  std::size_t buildings_loaded = 0;
  std::size_t buildings_kept = 0;
  std::size_t cells_built = 0;
  std::size_t cells_empty = 0;
};

struct PreparedInputs {
  std::vector<Building> buildings;
  std::vector<RoadSegment> roads;
  std::optional<Boundary> boundary;
  StageCounts stages;
};

/// Load, filter to motorable roads, clip to the boundary.
PreparedInputs prepare_inputs(const PipelineConfig& config);

struct RunResult {
  std::vector<ClassifiedCell> cells;
  LevelDistribution distribution;
  StageCounts stages;
};

/// Full pipeline. Writes cells.csv, cells.geojson, buildings.csv,
/// summary.json and manifest.json into the output directory.
RunResult run_pipeline(const PipelineConfig& config);

/// Scores <cells> against the validations. Writes evaluation.json and
/// ternary.csv into the output directory.
EvaluationReport run_evaluation(const PipelineConfig& config);

/// Writes connectors.geojson; returns the number of connectors.
std::size_t run_export_connectors(const PipelineConfig& config);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

}  // namespace roadaccess::cli

#include "pipeline.hpp"

#include <openssl/evp.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "roadaccess/errors.hpp"
#include "roadaccess/grid.hpp"
#include "roadaccess/spatial_index.hpp"

namespace roadaccess::cli {

using nlohmann::ordered_json;

namespace {

void log_issues(const char* what, const LoadReport& report) {
  constexpr std::size_t kMaxLogged = 20;
  for (std::size_t k = 0; k < report.issues.size() && k < kMaxLogged; ++k) {
    spdlog::warn("{} [{}]: {}", what, report.issues[k].location, report.issues[k].message);
  }
  if (report.issues.size() > kMaxLogged) {
    spdlog::warn("{}: {} more issues not shown", what, report.issues.size() - kMaxLogged);
  }
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write output file: " + path.string());
  out << text;
  if (!out) throw ConfigError("failed writing output file: " + path.string());
}

void ensure_out_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw ConfigError("cannot create output directory: " + dir.string());
}

ordered_json report_json(const LoadReport& r) {
  return {{"input", r.input_count}, {"loaded", r.loaded}, {"skipped", r.skipped}, {"filtered", r.filtered}};
}

ordered_json stages_json(const StageCounts& s) {
  return {{"buildings_file", report_json(s.buildings)},
          {"roads_file", report_json(s.roads)},
          {"road_segments_loaded", s.road_segments_loaded},
          {"road_segments_motorable", s.road_segments_motorable},
          {"road_segments_kept", s.road_segments_kept},
          {"buildings_loaded", s.buildings_loaded},
          {"buildings_kept", s.buildings_kept},
          {"cells_built", s.cells_built},
          {"cells_empty", s.cells_empty}};
}

ordered_json distribution_json(const LevelDistribution& d) {
  return {{"include_empty", d.include_empty},
          {"total", d.total},
          {"counts", {{"low", d.counts[0]}, {"medium", d.counts[1]}, {"high", d.counts[2]}}},
          {"percent", {{"low", d.percent[0]}, {"medium", d.percent[1]}, {"high", d.percent[2]}}}};
}

ordered_json input_json(const fs::path& path) {
  const std::string data = read_text_file(path);
  return {{"path", path.generic_string()}, {"bytes", data.size()}, {"sha256", sha256_hex(data)}};
}

ordered_json parameters_json(const PipelineConfig& c) {
  ordered_json classes = ordered_json::array();
  for (auto cls : motorable_classes()) classes.push_back(std::string(cls));
  return {{"surface_property", c.surface_property},
          {"min_confidence", c.min_confidence ? ordered_json(*c.min_confidence) : ordered_json(nullptr)},
          {"threshold", c.threshold},
          {"cell_size", c.cell_size},
          {"include_empty_in_distribution", c.include_empty_in_distribution},
          {"road_clip_margin", kRoadClipMargin},
          {"motorable_classes", std::move(classes)}};
}

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int k = 0; k < len; ++k) {
    out.push_back(kHex[md[k] >> 4]);
    out.push_back(kHex[md[k] & 0xF]);
  }
  return out;
}

PipelineConfig PipelineConfig::from_json_file(const fs::path& path) {
  const std::string text = read_text_file(path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config root must be an object");

  const fs::path base = path.parent_path();
  PipelineConfig c;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "paths") {
        for (const auto& [pk, pv] : value.items()) {
          const auto p = resolve(base, pv.get<std::string>());
          if (pk == "buildings") c.paths.buildings = p;
          else if (pk == "roads") c.paths.roads = p;
          else if (pk == "boundary") c.paths.boundary = p;
          else if (pk == "validations") c.paths.validations = p;
          else if (pk == "out") c.paths.out = p;
          else if (pk == "cells") c.paths.cells = p;
          else throw ConfigError("unknown config key: paths." + pk);
        }
      } else if (key == "surface_property") {
        c.surface_property = value.get<std::string>();
      } else if (key == "min_confidence") {
        if (!value.is_null()) c.min_confidence = value.get<double>();
      } else if (key == "threshold") {
        c.threshold = value.get<double>();
      } else if (key == "cell_size") {
        c.cell_size = value.get<double>();
      } else if (key == "include_empty_in_distribution") {
        c.include_empty_in_distribution = value.get<bool>();
      } else if (key == "workers") {
        if (!value.is_null()) {
          const auto w = value.get<std::int64_t>();
          if (w <= 0) throw ConfigError("workers must be a positive integer");
          c.workers = static_cast<unsigned>(w);
        }
      } else {
        throw ConfigError("unknown config key: " + key);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config has a value of the wrong type: ") + e.what());
  }
  return c;
}

unsigned PipelineConfig::worker_count() const noexcept {
  if (workers) return *workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

fs::path PipelineConfig::cells_path() const {
  return paths.cells.empty() ? paths.out / "cells.csv" : paths.cells;
}

void validate(const PipelineConfig& c, Command command) {
  if (!(c.threshold > 0)) throw ConfigError("threshold must be > 0");
  if (!(c.cell_size > 0)) throw ConfigError("cell_size must be > 0");
  if (c.min_confidence && !(*c.min_confidence >= 0.0 && *c.min_confidence <= 1.0)) {
    throw ConfigError("min_confidence must be in [0, 1]");
  }
  if (c.workers && *c.workers == 0) throw ConfigError("workers must be positive");

  auto require = [](const fs::path& p, const char* what) {
    if (p.empty()) throw ConfigError(std::string("no ") + what + " path configured");
    std::error_code ec;
    if (!fs::is_regular_file(p, ec)) throw ConfigError(std::string(what) + " file not found: " + p.string());
  };
  if (command == Command::evaluate) {
    require(c.paths.validations, "validations");
    require(c.cells_path(), "cells");
    return;
  }
  require(c.paths.buildings, "buildings");
  require(c.paths.roads, "roads");
  require(c.paths.boundary, "boundary");
}

PreparedInputs prepare_inputs(const PipelineConfig& c) {
  PreparedInputs in;
  spdlog::info("step 1: preparing buildings, roads and boundary");

  auto roads = load_roads(c.paths.roads, RoadLoadOptions{c.surface_property, "class"});
  log_issues("roads", roads.report);
  in.stages.roads = roads.report;
  in.stages.road_segments_loaded = roads.items.size();
  auto motorable = filter_motorable(roads.items);
  in.stages.road_segments_motorable = motorable.size();

  auto buildings = load_buildings(c.paths.buildings, BuildingLoadOptions{c.min_confidence, "confidence"});
  log_issues("buildings", buildings.report);
  in.stages.buildings = buildings.report;
  in.stages.buildings_loaded = buildings.items.size();

  in.boundary.emplace(load_boundary(c.paths.boundary));
  auto [kept_buildings, kept_roads] = clip_to_boundary(buildings.items, motorable, *in.boundary);
  in.buildings = std::move(kept_buildings);
  in.roads = std::move(kept_roads);
  in.stages.buildings_kept = in.buildings.size();
  in.stages.road_segments_kept = in.roads.size();

  spdlog::info("roads: {} features ({} skipped) -> {} segments, {} motorable, {} kept",
               roads.report.input_count, roads.report.skipped, in.stages.road_segments_loaded,
               in.stages.road_segments_motorable, in.stages.road_segments_kept);
  spdlog::info("buildings: {} records ({} skipped, {} below confidence) -> {} footprints, {} inside boundary",
               buildings.report.input_count, buildings.report.skipped, buildings.report.filtered,
               in.stages.buildings_loaded, in.stages.buildings_kept);
  return in;
}

RunResult run_pipeline(const PipelineConfig& c) {
  validate(c, Command::run);
  PreparedInputs in = prepare_inputs(c);
  const unsigned workers = c.worker_count();

  spdlog::info("step 2: building-level accessibility and surface ({} workers)", workers);
  const SegmentIndex road_index = SegmentIndex::build(in.roads);
  const PolygonIndex building_index = PolygonIndex::build(in.buildings);
  const auto metrics = compute_all(in.buildings, road_index, building_index, workers);

  spdlog::info("step 3: aggregating to {} m cells", c.cell_size);
  const CellMap aggregates = aggregate(metrics, in.buildings, c.cell_size, workers);
  const auto empties = empty_cells(*in.boundary, aggregates, c.cell_size);
  in.stages.cells_built = aggregates.size();
  in.stages.cells_empty = empties.size();

  spdlog::info("step 4: classifying {} built and {} empty cells", aggregates.size(), empties.size());
  RunResult result;
  result.cells = classify_all(aggregates, empties, c.threshold);
  result.distribution = distribution(result.cells, c.include_empty_in_distribution);
  result.stages = in.stages;
  spdlog::info("levels: low {} / medium {} / high {} of {} cells", result.distribution.counts[0],
               result.distribution.counts[1], result.distribution.counts[2], result.distribution.total);

  ensure_out_dir(c.paths.out);
  std::ostringstream cells_csv;
  write_cells_csv(cells_csv, result.cells);
  std::ostringstream cells_geojson;
  write_cells_geojson(cells_geojson, result.cells, c.cell_size);
  std::ostringstream buildings_csv;
  write_building_metrics_csv(buildings_csv, metrics);

  ordered_json summary = {
      {"threshold", c.threshold},
      {"cell_size", c.cell_size},
      {"cells_total", result.cells.size()},
      {"cells_built", in.stages.cells_built},
      {"cells_empty", in.stages.cells_empty},
      {"distribution", distribution_json(result.distribution)},
      {"distribution_with_empty", distribution_json(distribution(result.cells, true))},
      {"stages", stages_json(in.stages)},
  };
  const std::string summary_text = summary.dump(2) + "\n";

  const std::array<std::pair<const char*, std::string>, 4> outputs = {{
      {"cells.csv", std::move(cells_csv).str()},
      {"cells.geojson", std::move(cells_geojson).str()},
      {"buildings.csv", std::move(buildings_csv).str()},
      {"summary.json", summary_text},
  }};
  ordered_json output_digests = ordered_json::object();
  for (const auto& [name, text] : outputs) {
    write_file(c.paths.out / name, text);
    output_digests[name] = sha256_hex(text);
  }

  ordered_json manifest = {
      {"tool", "roadaccess"},
      {"command", "run"},
      {"inputs",
       {{"buildings", input_json(c.paths.buildings)},
        {"roads", input_json(c.paths.roads)},
        {"boundary", input_json(c.paths.boundary)}}},
      {"parameters", parameters_json(c)},
      {"stages", stages_json(in.stages)},
      {"outputs", std::move(output_digests)},
      {"execution", {{"workers", workers}}},
  };
  write_file(c.paths.out / "manifest.json", manifest.dump(2) + "\n");
  spdlog::info("outputs written to {}", c.paths.out.string());
  return result;
}

EvaluationReport run_evaluation(const PipelineConfig& c) {
  validate(c, Command::evaluate);
  std::ifstream cells_in(c.cells_path(), std::ios::binary);
  if (!cells_in) throw ConfigError("cannot open cells file: " + c.cells_path().string());
  const auto cells = read_cells_csv(cells_in);

  const auto validations = load_validations(c.paths.validations);
  log_issues("validations", validations.report);
  spdlog::info("validations: {} rows, {} rejected, {} votes after collapsing duplicates",
               validations.report.input_count, validations.report.skipped, validations.items.size());

  const EvaluationReport report = evaluate(cells, validations.items);
  spdlog::info("accuracy {:.4f}; F1 low {:.4f} medium {:.4f} high {:.4f}; {} matched, {} no consensus, {} unmatched",
               report.accuracy, report.f1[0], report.f1[1], report.f1[2], report.matched_cells,
               report.no_consensus, report.unmatched);

  ensure_out_dir(c.paths.out);
  std::ostringstream report_text;
  write_report_json(report_text, report);
  write_file(c.paths.out / "evaluation.json", std::move(report_text).str());
  std::ostringstream ternary;
  write_ternary_csv(ternary, ternary_proportions(validations.items, true));
  write_file(c.paths.out / "ternary.csv", std::move(ternary).str());
  return report;
}

std::size_t run_export_connectors(const PipelineConfig& c) {
  validate(c, Command::export_connectors);
  const PreparedInputs in = prepare_inputs(c);
  const SegmentIndex road_index = SegmentIndex::build(in.roads);
  const PolygonIndex building_index = PolygonIndex::build(in.buildings);
  const auto access = compute_access(in.buildings, road_index, building_index, c.worker_count());

  ensure_out_dir(c.paths.out);
  std::ostringstream out;
  write_connectors_geojson(out, access);
  write_file(c.paths.out / "connectors.geojson", std::move(out).str());
  spdlog::info("{} connectors written to {}", access.size(), (c.paths.out / "connectors.geojson").string());
  return access.size();
}

}  // namespace roadaccess::cli

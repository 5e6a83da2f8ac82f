#include "cli.hpp"

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pipeline.hpp"
#include "roadaccess/errors.hpp"
#include "roadaccess/synth.hpp"

namespace roadaccess::cli {

namespace {

struct Overrides {
  std::string config;
  std::optional<double> threshold;
  std::optional<double> min_confidence;
  std::optional<unsigned> workers;
  std::optional<double> cell_size;
  std::string out;
  std::string buildings;
  std::string roads;
  std::string boundary;
  std::string validations;
  std::string cells;
  std::string surface_property;
  bool include_empty = false;
};

void add_pipeline_options(CLI::App& cmd, Overrides& o) {
  cmd.add_option("--config", o.config, "JSON pipeline config");
  cmd.add_option("--threshold", o.threshold, "mean-obstruction threshold for high deprivation");
  cmd.add_option("--min-confidence", o.min_confidence, "drop buildings below this confidence");
  cmd.add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
  cmd.add_option("--out", o.out, "output directory");
  cmd.add_option("--cell-size", o.cell_size, "grid cell size in meters");
  cmd.add_option("--buildings", o.buildings, "buildings GeoJSON or CSV-with-WKT");
  cmd.add_option("--roads", o.roads, "roads GeoJSON");
  cmd.add_option("--boundary", o.boundary, "boundary GeoJSON");
  cmd.add_option("--validations", o.validations, "validation CSV");
  cmd.add_option("--cells", o.cells, "classified cells CSV (evaluate)");
  cmd.add_option("--surface-property", o.surface_property, "road property holding the surface tag");
  cmd.add_flag("--include-empty", o.include_empty, "count empty cells in the level distribution");
}

PipelineConfig resolve_config(const Overrides& o) {
  PipelineConfig c = o.config.empty() ? PipelineConfig{} : PipelineConfig::from_json_file(o.config);
  if (o.threshold) c.threshold = *o.threshold;
  if (o.min_confidence) c.min_confidence = *o.min_confidence;
  if (o.workers) c.workers = *o.workers;
  if (o.cell_size) c.cell_size = *o.cell_size;
  if (!o.out.empty()) c.paths.out = o.out;
  if (!o.buildings.empty()) c.paths.buildings = o.buildings;
  if (!o.roads.empty()) c.paths.roads = o.roads;
  if (!o.boundary.empty()) c.paths.boundary = o.boundary;
  if (!o.validations.empty()) c.paths.validations = o.validations;
  if (!o.cells.empty()) c.paths.cells = o.cells;
  if (!o.surface_property.empty()) c.surface_property = o.surface_property;
  if (o.include_empty) c.include_empty_in_distribution = true;
  return c;
}

void report_error(const char* kind, const std::string& message) {
  std::string one_line = message;
  for (auto& ch : one_line) {
    if (ch == '\n' || ch == '\r') ch = ' ';
  }
  std::cerr << "roadaccess: error=" << kind << " message=\"" << one_line << "\"\n";
}

void setup_logging(bool quiet) {
  auto logger = spdlog::get("roadaccess");
  if (!logger) {
    logger = spdlog::stderr_logger_mt("roadaccess");
    logger->set_pattern("[%H:%M:%S.%e] [%l] %v");
  }
  spdlog::set_default_logger(logger);
  spdlog::set_level(quiet ? spdlog::level::warn : spdlog::level::info);
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Road access deprivation pipeline", "roadaccess"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "only log warnings and errors");

  Overrides run_opts;
  Overrides eval_opts;
  Overrides export_opts;
  auto* run = app.add_subcommand("run", "ingest, metrics, aggregation and classification");
  add_pipeline_options(*run, run_opts);
  auto* evaluate = app.add_subcommand("evaluate", "score classified cells against validations");
  add_pipeline_options(*evaluate, eval_opts);
  auto* export_connectors = app.add_subcommand("export-connectors", "write connector lines as GeoJSON");
  add_pipeline_options(*export_connectors, export_opts);

  std::string synth_layout = "formal_grid";
  std::uint64_t synth_seed = 1;
  double synth_extent = 600.0;
  double synth_paved = 1.0;
  std::string synth_out = "scene";
  auto* synth = app.add_subcommand("synth", "generate a synthetic test scene");
  synth->add_option("--layout", synth_layout, "formal_grid | informal_cluster | mixed");
  synth->add_option("--seed", synth_seed, "random seed");
  synth->add_option("--extent", synth_extent, "scene side length in meters");
  synth->add_option("--paved-fraction", synth_paved, "probability a road is paved");
  synth->add_option("--out", synth_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("config", e.what());
    return kExitConfigError;
  }

  setup_logging(quiet);
  try {
    if (run->parsed()) {
      run_pipeline(resolve_config(run_opts));
    } else if (evaluate->parsed()) {
      run_evaluation(resolve_config(eval_opts));
    } else if (export_connectors->parsed()) {
      run_export_connectors(resolve_config(export_opts));
    } else if (synth->parsed()) {
      const auto layout = synth::parse_layout(synth_layout);
      if (!layout) throw ConfigError("unknown layout: " + synth_layout);
      synth::SceneSpec spec;
      spec.seed = synth_seed;
      spec.layout = *layout;
      spec.extent = synth_extent;
      spec.road_surface_mix = synth_paved;
      try {
        synth::write_scene(synth::generate(spec), synth_out);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
  } catch (const ConfigError& e) {
    report_error("config", e.what());
    return kExitConfigError;
  } catch (const DataError& e) {
    report_error("data", e.what());
    return kExitDataError;
  } catch (const EvaluationError& e) {
    report_error("evaluation", e.what());
    return kExitEvaluationError;
  } catch (const std::exception& e) {
    report_error("internal", e.what());
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace roadaccess::cli

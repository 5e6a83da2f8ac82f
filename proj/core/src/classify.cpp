#include "roadaccess/classify.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

#include "json.hpp"
#include "roadaccess/errors.hpp"
#include "text_format.hpp"

namespace roadaccess {

DeprivationLevel classify_cell(const CellAggregate& agg, double threshold) {
  if (agg.building_count == 0 || !agg.mean_obstruction) return DeprivationLevel::low;
  if (*agg.mean_obstruction > threshold) return DeprivationLevel::high;
  return agg.modal_surface == Surface::paved ? DeprivationLevel::low : DeprivationLevel::medium;
}

std::vector<ClassifiedCell> classify_all(const CellMap& aggregates,
                                         std::span<const CellId> empty_cells, double threshold) {
  std::vector<ClassifiedCell> out;
  out.reserve(aggregates.size() + empty_cells.size());
  for (const auto& [cell, agg] : aggregates) {
    out.push_back({cell, classify_cell(agg, threshold), agg.building_count, agg.mean_obstruction,
                   agg.modal_surface});
  }
  for (const auto& cell : empty_cells) {
    if (!aggregates.contains(cell)) out.push_back({cell, DeprivationLevel::low, 0, {}, {}});
  }
  std::sort(out.begin(), out.end(),
            [](const ClassifiedCell& a, const ClassifiedCell& b) { return a.cell < b.cell; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const ClassifiedCell& a, const ClassifiedCell& b) {
                          return a.cell == b.cell;
                        }),
            out.end());
  return out;
}

LevelDistribution distribution(std::span<const ClassifiedCell> cells, bool include_empty) {
  LevelDistribution d;
  d.include_empty = include_empty;
  for (const auto& c : cells) {
    if (!include_empty && c.empty()) continue;
    ++d.counts[index_of(c.level)];
    ++d.total;
  }
  if (d.total > 0) {
    for (std::size_t k = 0; k < 3; ++k) {
      d.percent[k] = 100.0 * static_cast<double>(d.counts[k]) / static_cast<double>(d.total);
    }
  }
  return d;
}

void write_cells_csv(std::ostream& out, std::span<const ClassifiedCell> cells) {
  out << "i,j,level,building_count,mean_obstruction,modal_surface,empty\n";
  for (const auto& c : cells) {
    out << c.cell.i << ',' << c.cell.j << ',' << to_string(c.level) << ',' << c.building_count
        << ',' << (c.mean_obstruction ? detail::format_double(*c.mean_obstruction) : "") << ','
        << (c.modal_surface ? to_string(*c.modal_surface) : "") << ','
        << (c.empty() ? "true" : "false") << '\n';
  }
}

std::vector<ClassifiedCell> read_cells_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("cell CSV is empty");
  const auto header = detail::split_csv_line(line);
  static const std::vector<std::string> kHeader = {
      "i", "j", "level", "building_count", "mean_obstruction", "modal_surface", "empty"};
  if (header != kHeader) throw DataError("unexpected cell CSV header");

  std::vector<ClassifiedCell> cells;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto f = detail::split_csv_line(line);
    const auto bad = [&] { return DataError("malformed cell CSV at line " + std::to_string(line_no)); };
    if (f.size() != kHeader.size()) throw bad();
    const auto i = detail::parse_int(f[0]);
    const auto j = detail::parse_int(f[1]);
    const auto level = parse_level(f[2]);
    const auto count = detail::parse_int(f[3]);
    if (!i || !j || !level || !count || *count < 0) throw bad();
    ClassifiedCell c{{*i, *j}, *level, static_cast<std::size_t>(*count), {}, {}};
    if (!f[4].empty()) {
      c.mean_obstruction = detail::parse_double(f[4]);
      if (!c.mean_obstruction) throw bad();
    }
    if (!f[5].empty()) {
      c.modal_surface = parse_surface(f[5]);
      if (!c.modal_surface) throw bad();
    }
    cells.push_back(c);
  }
  return cells;
}

void write_cells_geojson(std::ostream& out, std::span<const ClassifiedCell> cells,
                         double cell_size) {
  using nlohmann::json;
  json features = json::array();
  for (const auto& c : cells) {
    const PlanePoint o = cell_origin(c.cell, cell_size);
    const PlanePoint corners[] = {
        o, {o.x + cell_size, o.y}, {o.x + cell_size, o.y + cell_size}, {o.x, o.y + cell_size}, o};
    json ring = json::array();
    for (const auto& p : corners) {
      const GeoPoint g = project_inverse(p);
      ring.push_back({g.lon, g.lat});
    }
    json props = {{"i", c.cell.i},
                  {"j", c.cell.j},
                  {"level", std::string(to_string(c.level))},
                  {"building_count", c.building_count},
                  {"mean_obstruction", nullptr},
                  {"modal_surface", nullptr},
                  {"empty", c.empty()}};
    if (c.mean_obstruction) props["mean_obstruction"] = *c.mean_obstruction;
    if (c.modal_surface) props["modal_surface"] = std::string(to_string(*c.modal_surface));
    features.push_back({{"type", "Feature"},
                        {"geometry", {{"type", "Polygon"}, {"coordinates", json::array({ring})}}},
                        {"properties", std::move(props)}});
  }
  out << json{{"type", "FeatureCollection"}, {"features", std::move(features)}}.dump() << '\n';
}

}  // namespace roadaccess

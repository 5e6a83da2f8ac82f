#include "roadaccess/evaluate.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>

#include "json.hpp"
#include "roadaccess/errors.hpp"
#include "roadaccess/ingest.hpp"
#include "text_format.hpp"

namespace roadaccess {

namespace {

std::map<CellId, VoteCounts> votes_by_cell(std::span<const ValidationRecord> records) {
  std::map<CellId, VoteCounts> grouped;
  for (const auto& r : collapse_duplicate_votes(records)) ++grouped[r.cell][index_of(r.level)];
  return grouped;
}

std::optional<DeprivationLevel> majority(const VoteCounts& counts) {
  const std::size_t total = counts[0] + counts[1] + counts[2];
  if (total == 0) throw std::invalid_argument("consensus of an empty vote list");
  const auto top = std::max_element(counts.begin(), counts.end());
  const auto winners = std::count(counts.begin(), counts.end(), *top);
  if (winners > 1) return std::nullopt;
  return static_cast<DeprivationLevel>(top - counts.begin());
}

}  // namespace

VoteCounts tally_votes(std::span<const DeprivationLevel> votes) noexcept {
  VoteCounts counts{};
  for (auto v : votes) ++counts[index_of(v)];
  return counts;
}

std::optional<DeprivationLevel> consensus(std::span<const DeprivationLevel> votes) {
  return majority(tally_votes(votes));
}

ConsensusResult build_consensus(std::span<const ValidationRecord> records) {
  ConsensusResult out;
  const auto grouped = votes_by_cell(records);
  out.distinct_cells = grouped.size();
  for (const auto& [cell, counts] : grouped) {
    if (const auto level = majority(counts)) {
      out.cells.push_back({cell, *level, counts});
    } else {
      out.no_consensus.push_back(cell);
    }
  }
  return out;
}

std::size_t ConfusionMatrix3::total() const noexcept {
  std::size_t t = 0;
  for (const auto& row : counts) {
    for (auto v : row) t += v;
  }
  return t;
}

std::size_t ConfusionMatrix3::trace() const noexcept {
  return counts[0][0] + counts[1][1] + counts[2][2];
}

std::size_t ConfusionMatrix3::row_sum(std::size_t ref) const noexcept {
  return counts[ref][0] + counts[ref][1] + counts[ref][2];
}

std::size_t ConfusionMatrix3::column_sum(std::size_t model) const noexcept {
  return counts[0][model] + counts[1][model] + counts[2][model];
}

ConfusionResult build_confusion(std::span<const ClassifiedCell> model,
                                std::span<const ConsensusCell> refs) {
  std::map<CellId, DeprivationLevel> predicted;
  for (const auto& c : model) predicted[c.cell] = c.level;

  ConfusionResult out;
  for (const auto& r : refs) {
    const auto it = predicted.find(r.cell);
    if (it == predicted.end()) {
      out.unmatched.push_back(r.cell);
      continue;
    }
    ++out.matrix.counts[index_of(r.level)][index_of(it->second)];
  }
  if (out.matrix.total() == 0) {
    throw EvaluationError("no validated cell matches a model cell");
  }
  return out;
}

double accuracy(const ConfusionMatrix3& cm) {
  const std::size_t total = cm.total();
  if (total == 0) throw EvaluationError("accuracy of an empty confusion matrix");
  return static_cast<double>(cm.trace()) / static_cast<double>(total);
}

std::array<double, 3> f1_per_class(const ConfusionMatrix3& cm) {
  if (cm.total() == 0) throw EvaluationError("F1 of an empty confusion matrix");
  std::array<double, 3> f1{};
  for (std::size_t c = 0; c < 3; ++c) {
    const auto tp = static_cast<double>(cm.counts[c][c]);
    const auto fp = static_cast<double>(cm.column_sum(c)) - tp;
    const auto fn = static_cast<double>(cm.row_sum(c)) - tp;
    const double denom = tp + 0.5 * (fp + fn);
    f1[c] = denom > 0.0 ? tp / denom : 0.0;
  }
  return f1;
}

std::vector<Flow> flow_counts(const ConfusionMatrix3& cm) {
  std::vector<Flow> flows;
  flows.reserve(9);
  for (auto m : kAllLevels) {
    for (auto r : kAllLevels) flows.push_back({m, r, cm.counts[index_of(r)][index_of(m)]});
  }
  return flows;
}

std::vector<Flow> flow_counts(std::span<const ClassifiedCell> model,
                              std::span<const ConsensusCell> refs) {
  return flow_counts(build_confusion(model, refs).matrix);
}

std::vector<TernaryPoint> ternary_proportions(std::span<const ValidationRecord> records,
                                              bool multi_only) {
  std::vector<TernaryPoint> out;
  for (const auto& [cell, counts] : votes_by_cell(records)) {
    const std::size_t n = counts[0] + counts[1] + counts[2];
    if (multi_only && n < 2) continue;
    const auto dn = static_cast<double>(n);
    out.push_back({cell, static_cast<double>(counts[0]) / dn, static_cast<double>(counts[1]) / dn,
                   static_cast<double>(counts[2]) / dn, n});
  }
  return out;
}

EvaluationReport evaluate(std::span<const ClassifiedCell> model,
                          std::span<const ValidationRecord> records) {
  const ConsensusResult cons = build_consensus(records);
  const ConfusionResult conf = build_confusion(model, cons.cells);
  EvaluationReport report;
  report.confusion = conf.matrix;
  report.accuracy = accuracy(conf.matrix);
  report.f1 = f1_per_class(conf.matrix);
  report.flows = flow_counts(conf.matrix);
  report.validated_cells = cons.distinct_cells;
  report.matched_cells = conf.matrix.total();
  report.no_consensus = cons.no_consensus.size();
  report.unmatched = conf.unmatched.size();
  return report;
}

void write_report_json(std::ostream& out, const EvaluationReport& report) {
  using nlohmann::ordered_json;
  ordered_json confusion = ordered_json::array();
  for (const auto& row : report.confusion.counts) confusion.push_back(row);
  ordered_json flows = ordered_json::array();
  for (const auto& f : report.flows) {
    flows.push_back({{"model", std::string(to_string(f.model))},
                     {"reference", std::string(to_string(f.reference))},
                     {"count", f.count}});
  }
  ordered_json doc = {
      {"accuracy", report.accuracy},
      {"f1", {{"low", report.f1[0]}, {"medium", report.f1[1]}, {"high", report.f1[2]}}},
      {"confusion", std::move(confusion)},
      {"confusion_axes", {{"rows", "reference"}, {"columns", "model"},
                          {"order", {"low", "medium", "high"}}}},
      {"flows", std::move(flows)},
      {"excluded", {{"no_consensus", report.no_consensus}, {"unmatched", report.unmatched}}},
      {"validated_cells", report.validated_cells},
      {"matched_cells", report.matched_cells},
  };
  out << doc.dump(2) << '\n';
}

void write_ternary_csv(std::ostream& out, std::span<const TernaryPoint> points) {
  out << "i,j,p_low,p_medium,p_high,n_votes\n";
  for (const auto& p : points) {
    out << p.cell.i << ',' << p.cell.j << ',' << detail::format_double(p.p_low) << ','
        << detail::format_double(p.p_medium) << ',' << detail::format_double(p.p_high) << ','
        << p.n_votes << '\n';
  }
}

}  // namespace roadaccess

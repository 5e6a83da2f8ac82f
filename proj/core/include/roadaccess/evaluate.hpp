#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "roadaccess/classify.hpp"
#include "roadaccess/types.hpp"

namespace roadaccess {

using VoteCounts = std::array<std::size_t, 3>;  // indexed by index_of(level)

VoteCounts tally_votes(std::span<const DeprivationLevel> votes) noexcept;

/// Majority level: strictly more votes than every other level. A single
/// vote is a consensus by itself; a tied top count has none.
/// Throws std::invalid_argument for an empty vote list.
std::optional<DeprivationLevel> consensus(std::span<const DeprivationLevel> votes);

struct ConsensusCell {
  CellId cell;
  DeprivationLevel level = DeprivationLevel::low;
  VoteCounts vote_counts{};
};

struct ConsensusResult {
  std::vector<ConsensusCell> cells;  ///< sorted by cell
  std::vector<CellId> no_consensus;  ///< sorted by cell
  std::size_t distinct_cells = 0;
};

/// Groups by cell (after collapsing duplicate validator votes) and applies
/// the majority rule per cell.
ConsensusResult build_consensus(std::span<const ValidationRecord> records);

/// counts[reference][model].
struct ConfusionMatrix3 {
  std::array<std::array<std::size_t, 3>, 3> counts{};

  std::size_t total() const noexcept;
  std::size_t trace() const noexcept;
  std::size_t row_sum(std::size_t ref) const noexcept;
  std::size_t column_sum(std::size_t model) const noexcept;
};

struct ConfusionResult {
  ConfusionMatrix3 matrix;
  std::vector<CellId> unmatched;  ///< reference cells absent from the model output
};

/// Throws EvaluationError when no reference cell matches a model cell.
ConfusionResult build_confusion(std::span<const ClassifiedCell> model,
                                std::span<const ConsensusCell> refs);

/// trace / total. Throws EvaluationError on an empty matrix.
double accuracy(const ConfusionMatrix3& cm);

/// One-vs-rest F1 = TP / (TP + (FP + FN) / 2) per level; 0 when TP, FP and
/// FN are all zero. Throws EvaluationError on an empty matrix.
std::array<double, 3> f1_per_class(const ConfusionMatrix3& cm);

struct Flow {
  DeprivationLevel model;
  DeprivationLevel reference;
  std::size_t count = 0;
};

/// All nine (model, reference) pairs in model-major order, zeros included.
std::vector<Flow> flow_counts(const ConfusionMatrix3& cm);
std::vector<Flow> flow_counts(std::span<const ClassifiedCell> model,
                              std::span<const ConsensusCell> refs);

struct TernaryPoint {
  CellId cell;
  double p_low = 0.0;
  double p_medium = 0.0;
  double p_high = 0.0;
  std::size_t n_votes = 0;
};

/// Per-cell vote proportions (after collapsing duplicate votes). With
/// multi_only, single-vote cells are dropped; no-consensus cells are kept.
std::vector<TernaryPoint> ternary_proportions(std::span<const ValidationRecord> records,
                                              bool multi_only = true);

struct EvaluationReport {
  ConfusionMatrix3 confusion;
  double accuracy = 0.0;
  std::array<double, 3> f1{};
  std::vector<Flow> flows;
  std::size_t validated_cells = 0;
  std::size_t matched_cells = 0;
  std::size_t no_consensus = 0;
  std::size_t unmatched = 0;
};

EvaluationReport evaluate(std::span<const ClassifiedCell> model,
                          std::span<const ValidationRecord> records);

/// {accuracy, f1: {low, medium, high}, confusion: 3x3 (rows = reference),
///  flows: [...], excluded: {no_consensus, unmatched}, validated_cells, matched_cells}
void write_report_json(std::ostream& out, const EvaluationReport& report);

/// CSV: i,j,p_low,p_medium,p_high,n_votes
void write_ternary_csv(std::ostream& out, std::span<const TernaryPoint> points);

}  // namespace roadaccess

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sniplang/corpus.hpp"

namespace sniplang {

/// counts[i][j]: examples whose gold label is labels[i] that were predicted
/// as labels[j]. Rows and columns share the same label order.
struct ConfusionMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<std::int64_t>> counts;

  bool operator==(const ConfusionMatrix&) const = default;
};

struct ClassMetrics {
  std::string label;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::int64_t support = 0;
  /// True when precision or recall had an empty denominator and was pinned
  /// to zero instead of dividing.
  bool zero_division = false;
};

struct MacroMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct EvaluationReport {
  double accuracy = 0.0;
  MacroMetrics macro;
  std::vector<ClassMetrics> per_class;  // label order of the matrix
  ConfusionMatrix matrix;
};

/// Tallies gold/predicted label pairs over the label set's full label list.
/// Throws DomainError if the sequences differ in length or name a label
/// outside the set.
ConfusionMatrix confusion(const std::vector<std::string>& gold,
                          const std::vector<std::string>& predicted, const LabelSet& label_set);

/// Per-class precision/recall/F1 with zero-division pinned to 0, plus
/// accuracy and unweighted macro averages over all classes.
EvaluationReport metrics(const ConfusionMatrix& matrix);

/// Human-readable report: accuracy, macro line, then one row per class
/// sorted by descending F1 (label ascending on ties).
std::string render_report_text(const EvaluationReport& report, std::uint64_t seed);

/// Machine-readable report as a single JSON document (newline-terminated).
std::string report_to_json(const EvaluationReport& report, std::uint64_t seed);

/// Confusion matrix as CSV: header row of predicted labels, one row per
/// gold label.
std::string matrix_to_csv(const ConfusionMatrix& matrix);

}  // namespace sniplang

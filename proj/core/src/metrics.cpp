#include "sniplang/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "sniplang/errors.hpp"

namespace sniplang {

ConfusionMatrix confusion(const std::vector<std::string>& gold,
                          const std::vector<std::string>& predicted, const LabelSet& label_set) {
  if (gold.size() != predicted.size())
    throw DomainError("gold and predicted label sequences differ in length");

  ConfusionMatrix matrix;
  matrix.labels = label_set.labels;
  matrix.counts.assign(matrix.labels.size(),
                       std::vector<std::int64_t>(matrix.labels.size(), 0));
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < matrix.labels.size(); ++i) index.emplace(matrix.labels[i], i);

  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto g = index.find(gold[i]);
    if (g == index.end()) throw DomainError("unknown gold label '" + gold[i] + "'");
    const auto p = index.find(predicted[i]);
    if (p == index.end()) throw DomainError("unknown predicted label '" + predicted[i] + "'");
    ++matrix.counts[g->second][p->second];
  }
  return matrix;
}

EvaluationReport metrics(const ConfusionMatrix& matrix) {
  const std::size_t n = matrix.labels.size();
  if (matrix.counts.size() != n) throw DomainError("confusion matrix is not square");
  for (const auto& row : matrix.counts)
    if (row.size() != n) throw DomainError("confusion matrix is not square");

  EvaluationReport report;
  report.matrix = matrix;

  std::int64_t total = 0;
  std::int64_t diagonal = 0;
  std::vector<std::int64_t> col_sum(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    diagonal += matrix.counts[i][i];
    for (std::size_t j = 0; j < n; ++j) {
      total += matrix.counts[i][j];
      col_sum[j] += matrix.counts[i][j];
    }
  }
  report.accuracy = total == 0 ? 0.0 : static_cast<double>(diagonal) / static_cast<double>(total);

  report.per_class.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ClassMetrics m;
    m.label = matrix.labels[i];
    const std::int64_t tp = matrix.counts[i][i];
    std::int64_t row_sum = 0;
    for (std::size_t j = 0; j < n; ++j) row_sum += matrix.counts[i][j];
    m.support = row_sum;

    if (col_sum[i] == 0) {
      m.zero_division = true;
    } else {
      m.precision = static_cast<double>(tp) / static_cast<double>(col_sum[i]);
    }
    if (row_sum == 0) {
      m.zero_division = true;
    } else {
      m.recall = static_cast<double>(tp) / static_cast<double>(row_sum);
    }
    if (m.precision + m.recall > 0.0)
      m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);

    report.macro.precision += m.precision;
    report.macro.recall += m.recall;
    report.macro.f1 += m.f1;
    report.per_class.push_back(std::move(m));
  }
  if (n > 0) {
    report.macro.precision /= static_cast<double>(n);
    report.macro.recall /= static_cast<double>(n);
    report.macro.f1 /= static_cast<double>(n);
  }
  return report;
}

std::string render_report_text(const EvaluationReport& report, std::uint64_t seed) {
  std::vector<const ClassMetrics*> rows;
  rows.reserve(report.per_class.size());
  for (const ClassMetrics& m : report.per_class) rows.push_back(&m);
  std::sort(rows.begin(), rows.end(), [](const ClassMetrics* a, const ClassMetrics* b) {
    if (a->f1 != b->f1) return a->f1 > b->f1;
    return a->label < b->label;
  });

  std::size_t label_width = 5;  // "label"
  for (const ClassMetrics* m : rows) label_width = std::max(label_width, m->label.size());

  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "accuracy %.4f  (seed %llu)\n", report.accuracy,
                static_cast<unsigned long long>(seed));
  out << buf;
  std::snprintf(buf, sizeof buf, "macro    precision %.4f  recall %.4f  f1 %.4f\n",
                report.macro.precision, report.macro.recall, report.macro.f1);
  out << buf;
  out << '\n';
  out << std::string(label_width - 5, ' ') << "label  precision  recall      f1  support\n";
  for (const ClassMetrics* m : rows) {
    out << std::string(label_width - m->label.size(), ' ') << m->label;
    std::snprintf(buf, sizeof buf, "     %.4f  %.4f  %.4f  %7lld%s\n", m->precision, m->recall,
                  m->f1, static_cast<long long>(m->support), m->zero_division ? "  *" : "");
    out << buf;
  }
  bool any_zero_division = false;
  for (const ClassMetrics* m : rows) any_zero_division |= m->zero_division;
  if (any_zero_division) out << "\n* precision or recall had no denominator; reported as 0\n";
  return out.str();
}

std::string report_to_json(const EvaluationReport& report, std::uint64_t seed) {
  nlohmann::ordered_json doc;
  doc["format"] = "sniplang.report";
  doc["version"] = 1;
  doc["seed"] = seed;
  doc["averaging"] = "macro";
  doc["accuracy"] = report.accuracy;
  doc["macro"] = {{"precision", report.macro.precision},
                  {"recall", report.macro.recall},
                  {"f1", report.macro.f1}};
  nlohmann::ordered_json per_class = nlohmann::ordered_json::object();
  for (const ClassMetrics& m : report.per_class)
    per_class[m.label] = {{"precision", m.precision},
                          {"recall", m.recall},
                          {"f1", m.f1},
                          {"support", m.support},
                          {"zero_division", m.zero_division}};
  doc["per_class"] = std::move(per_class);
  doc["matrix"] = {{"labels", report.matrix.labels}, {"counts", report.matrix.counts}};
  return doc.dump() + "\n";
}

std::string matrix_to_csv(const ConfusionMatrix& matrix) {
  std::ostringstream out;
  out << "gold\\predicted";
  for (const std::string& label : matrix.labels) out << ',' << label;
  out << '\n';
  for (std::size_t i = 0; i < matrix.labels.size(); ++i) {
    out << matrix.labels[i];
    for (const std::int64_t count : matrix.counts[i]) out << ',' << count;
    out << '\n';
  }
  return out.str();
}

}  // namespace sniplang

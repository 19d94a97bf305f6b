#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sniplang/pipeline.hpp"
#include "sniplang/sparse_vector.hpp"
#include "sniplang/vocabulary.hpp"

namespace sniplang {

inline constexpr int kModelFormatVersion = 1;

/// Multinomial Naive Bayes model. Labels are sorted lexicographically;
/// log_likelihood[c] is dense over vocabulary indices. Immutable once
/// trained, safe to share across threads.
struct MnbModel {
  std::vector<std::string> labels;
  std::vector<double> log_prior;
  std::vector<std::vector<double>> log_likelihood;
  double alpha = 1.0;
  Vocabulary vocab;
  PipelineConfig config;
  int format_version = kModelFormatVersion;
};

struct Prediction {
  std::string label;               // argmax posterior, ties to the smallest label
  std::vector<double> posterior;   // aligned with model.labels, sums to 1
};

/// Trains with additive smoothing: P(t|c) = (W_ct + alpha) / (W_c + alpha|V|)
/// where W_ct is the summed feature weight of term t over class-c vectors
/// (fractional under TF-IDF features). Priors are empirical class frequencies.
/// Throws DomainError for alpha <= 0 or fewer than two classes.
MnbModel train(const std::vector<std::pair<SparseVector, std::string>>& vectors, double alpha,
               Vocabulary vocab, PipelineConfig config);

/// Per-class log p(c) + sum_t v[t] * log p(t|c), aligned with model.labels.
std::vector<double> log_joint(const MnbModel& model, const SparseVector& v);

/// Softmax over log_joint with max subtraction; never overflows.
Prediction predict(const MnbModel& model, const SparseVector& v);

/// Tokenize-and-vectorize convenience for one snippet text.
Prediction predict_text(const MnbModel& model, std::string_view text);

}  // namespace sniplang

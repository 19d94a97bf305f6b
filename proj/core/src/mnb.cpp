#include "sniplang/mnb.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>

#include "sniplang/errors.hpp"

namespace sniplang {

MnbModel train(const std::vector<std::pair<SparseVector, std::string>>& vectors, double alpha,
               Vocabulary vocab, PipelineConfig config) {
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");

  std::map<std::string, std::size_t> class_index;  // sorted labels
  for (const auto& [v, label] : vectors) class_index.emplace(label, 0);
  if (class_index.size() < 2) throw DomainError("degenerate training set: fewer than 2 classes");

  MnbModel model;
  model.alpha = alpha;
  model.vocab = std::move(vocab);
  model.config = std::move(config);
  for (auto& [label, index] : class_index) {
    index = model.labels.size();
    model.labels.push_back(label);
  }

  const std::size_t n_classes = model.labels.size();
  const std::size_t n_terms = model.vocab.size();
  std::vector<std::vector<double>> weight(n_classes, std::vector<double>(n_terms, 0.0));
  std::vector<std::int64_t> class_docs(n_classes, 0);

  for (const auto& [v, label] : vectors) {
    const std::size_t c = class_index.at(label);
    ++class_docs[c];
    for (const auto& [index, w] : v.entries()) {
      if (index >= n_terms)
        throw DomainError("vector index " + std::to_string(index) +
                          " out of range for vocabulary of size " + std::to_string(n_terms));
      weight[c][index] += w;
    }
  }

  const double n_total = static_cast<double>(vectors.size());
  model.log_prior.reserve(n_classes);
  model.log_likelihood.resize(n_classes);
  for (std::size_t c = 0; c < n_classes; ++c) {
    model.log_prior.push_back(std::log(static_cast<double>(class_docs[c]) / n_total));
    double class_weight = 0.0;
    for (const double w : weight[c]) class_weight += w;
    const double denom = class_weight + alpha * static_cast<double>(n_terms);
    auto& ll = model.log_likelihood[c];
    ll.reserve(n_terms);
    for (const double w : weight[c]) ll.push_back(std::log((w + alpha) / denom));
  }
  return model;
}

std::vector<double> log_joint(const MnbModel& model, const SparseVector& v) {
  std::vector<double> scores(model.log_prior);
  for (const auto& [index, w] : v.entries()) {
    if (index >= model.vocab.size())
      throw DomainError("vector index " + std::to_string(index) +
                        " out of range for vocabulary of size " +
                        std::to_string(model.vocab.size()));
    for (std::size_t c = 0; c < scores.size(); ++c)
      scores[c] += w * model.log_likelihood[c][index];
  }
  return scores;
}

Prediction predict(const MnbModel& model, const SparseVector& v) {
  const std::vector<double> scores = log_joint(model, v);
  const double max_score = *std::max_element(scores.begin(), scores.end());

  Prediction p;
  p.posterior.reserve(scores.size());
  double total = 0.0;
  for (const double s : scores) {
    const double e = std::exp(s - max_score);
    total += e;
    p.posterior.push_back(e);
  }
  for (double& q : p.posterior) q /= total;

  std::size_t best = 0;
  for (std::size_t c = 1; c < p.posterior.size(); ++c)
    if (p.posterior[c] > p.posterior[best]) best = c;  // ties keep the smaller label
  p.label = model.labels[best];
  return p;
}

Prediction predict_text(const MnbModel& model, std::string_view text) {
  return predict(model, vectorize_text(text, model.vocab, model.config));
}

}  // namespace sniplang

#include "sniplang/cross_validation.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <utility>

#include "sniplang/errors.hpp"
#include "sniplang/mnb.hpp"
#include "sniplang/rng.hpp"

namespace sniplang {

std::vector<int> kfold_split(std::size_t n, int k, const std::vector<std::string>& labels,
                             std::uint64_t seed) {
  if (k < 2) throw DomainError("fold count must be at least 2");
  if (labels.size() != n) throw DomainError("label count does not match example count");

  std::map<std::string, std::vector<std::size_t>> by_class;  // sorted → stable ordinals
  for (std::size_t i = 0; i < n; ++i) by_class[labels[i]].push_back(i);
  for (const auto& [label, members] : by_class)
    if (members.size() < static_cast<std::size_t>(k))
      throw DomainError("class '" + label + "' has " + std::to_string(members.size()) +
                        " members, fewer than " + std::to_string(k) + " folds");

  std::vector<int> fold(n, 0);
  std::size_t class_ordinal = 0;
  for (auto& [label, members] : by_class) {
    SplitMix64 rng(mix_seed(seed, hash_string(label)));
    rng.shuffle(members);
    for (std::size_t i = 0; i < members.size(); ++i)
      fold[members[i]] = static_cast<int>((i + class_ordinal) % static_cast<std::size_t>(k));
    ++class_ordinal;
  }
  return fold;
}

namespace {

// Accuracy per alpha for one held-out fold: vocabulary and model are refit
// from the fold's training texts alone.
std::vector<double> fold_accuracies(const std::vector<std::string>& texts,
                                    const std::vector<std::string>& labels,
                                    const std::vector<int>& fold, int held_out,
                                    const std::vector<double>& alpha_grid,
                                    const PipelineConfig& config) {
  std::vector<std::string> train_texts;
  std::vector<std::string> train_labels;
  std::vector<std::size_t> test_index;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (fold[i] == held_out) {
      test_index.push_back(i);
    } else {
      train_texts.push_back(texts[i]);
      train_labels.push_back(labels[i]);
    }
  }

  const Vocabulary vocab = fit_vocabulary(train_texts, config);
  std::vector<std::pair<SparseVector, std::string>> train_vectors;
  train_vectors.reserve(train_texts.size());
  for (std::size_t i = 0; i < train_texts.size(); ++i)
    train_vectors.emplace_back(vectorize_text(train_texts[i], vocab, config), train_labels[i]);
  std::vector<SparseVector> test_vectors;
  test_vectors.reserve(test_index.size());
  for (const std::size_t i : test_index)
    test_vectors.push_back(vectorize_text(texts[i], vocab, config));

  std::vector<double> accuracy;
  accuracy.reserve(alpha_grid.size());
  for (const double alpha : alpha_grid) {
    const MnbModel model = train(train_vectors, alpha, vocab, config);
    std::size_t correct = 0;
    for (std::size_t j = 0; j < test_vectors.size(); ++j)
      if (predict(model, test_vectors[j]).label == labels[test_index[j]]) ++correct;
    accuracy.push_back(test_vectors.empty()
                           ? 0.0
                           : static_cast<double>(correct) / static_cast<double>(test_vectors.size()));
  }
  return accuracy;
}

}  // namespace

GridSearchResult grid_search_cv(const std::vector<std::string>& texts,
                                const std::vector<std::string>& labels,
                                const std::vector<double>& alpha_grid, int k, std::uint64_t seed,
                                const PipelineConfig& config) {
  if (alpha_grid.empty()) throw DomainError("alpha grid is empty");
  for (const double alpha : alpha_grid)
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");

  const std::vector<int> fold = kfold_split(texts.size(), k, labels, seed);

  std::vector<std::future<std::vector<double>>> futures;
  futures.reserve(static_cast<std::size_t>(k));
  for (int f = 0; f < k; ++f)
    futures.push_back(std::async(std::launch::async, fold_accuracies, std::cref(texts),
                                 std::cref(labels), std::cref(fold), f, std::cref(alpha_grid),
                                 std::cref(config)));

  GridSearchResult result;
  result.alpha_grid = alpha_grid;
  result.fold_count = k;
  result.seed = seed;
  result.mean_cv_accuracy.assign(alpha_grid.size(), 0.0);
  for (auto& future : futures) {  // fold order, not completion order
    const std::vector<double> accuracy = future.get();
    for (std::size_t a = 0; a < alpha_grid.size(); ++a)
      result.mean_cv_accuracy[a] += accuracy[a];
  }
  for (double& acc : result.mean_cv_accuracy) acc /= static_cast<double>(k);

  std::size_t best = 0;
  for (std::size_t a = 1; a < alpha_grid.size(); ++a) {
    const bool better = result.mean_cv_accuracy[a] > result.mean_cv_accuracy[best];
    const bool tie_smaller = result.mean_cv_accuracy[a] == result.mean_cv_accuracy[best] &&
                             alpha_grid[a] < alpha_grid[best];
    if (better || tie_smaller) best = a;
  }
  result.best_alpha = alpha_grid[best];
  return result;
}

std::vector<double> default_alpha_grid() { return {0.001, 0.01, 0.1, 0.5, 1.0}; }

}  // namespace sniplang

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sniplang/pipeline.hpp"

namespace sniplang {

/// Assigns each example to one of `k` folds, stratified by label: every
/// class is spread across folds as evenly as its size allows. Within a
/// class the order is shuffled deterministically from `seed`, and the fold
/// rotation is offset by the class ordinal so small classes do not pile
/// their remainders into fold 0. Throws DomainError naming the first class
/// with fewer than `k` members.
std::vector<int> kfold_split(std::size_t n, int k, const std::vector<std::string>& labels,
                             std::uint64_t seed);

struct GridSearchResult {
  std::vector<double> alpha_grid;
  int fold_count = 0;
  /// Mean held-out accuracy across folds, aligned with alpha_grid.
  std::vector<double> mean_cv_accuracy;
  double best_alpha = 0.0;
  std::uint64_t seed = 0;
};

/// Cross-validated grid search over the smoothing parameter. Each fold
/// refits the vocabulary from the raw training texts so no term statistics
/// leak from held-out examples. Folds run concurrently; results reduce in
/// fold order, so the outcome is independent of scheduling. Ties on mean
/// accuracy resolve to the smallest alpha.
GridSearchResult grid_search_cv(const std::vector<std::string>& texts,
                                const std::vector<std::string>& labels,
                                const std::vector<double>& alpha_grid, int k, std::uint64_t seed,
                                const PipelineConfig& config);

/// The alpha grid used when the caller does not supply one.
std::vector<double> default_alpha_grid();

}  // namespace sniplang

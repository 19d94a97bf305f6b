#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sniplang/corpus.hpp"
#include "sniplang/metrics.hpp"
#include "sniplang/mnb.hpp"

namespace sniplang {

/// Stratified train/test split: per label, round(n_label * test_fraction)
/// snippets (at least 1) go to test, chosen by a deterministic per-label
/// shuffle of `seed`. Both halves keep the corpus's original snippet order.
/// Throws DomainError when the fraction is outside (0,1) or any class has
/// fewer than 2 snippets.
std::pair<Corpus, Corpus> train_test_split(const Corpus& corpus, double test_fraction,
                                           std::uint64_t seed);

/// Predicts every test snippet with the model's own vocabulary and config
/// and tallies the results against the corpus label set. Batches run
/// concurrently but reduce in snippet order, so the report is independent
/// of scheduling. Throws DomainError on an empty test corpus.
EvaluationReport evaluate_model(const MnbModel& model, const Corpus& test);

/// Predictions produced outside this tool: either a bare label per snippet
/// id, or a per-label probability map (decoded by argmax, ties to the
/// lexicographically smallest label).
struct ExternalPredictions {
  using Entry = std::variant<std::string, std::map<std::string, double>>;
  std::map<std::string, Entry> entries;
};

/// Reads a JSON document mapping snippet id -> label string or
/// {label: probability, ...}. Throws IoError on malformed documents,
/// non-finite or negative probabilities, or empty probability maps.
ExternalPredictions load_external_predictions(std::istream& in);
ExternalPredictions load_external_predictions_file(const std::string& path);

/// Scores an external predictions file against a gold-labeled corpus under
/// the same metrics as evaluate_model. Throws DomainError listing the ids
/// when any test snippet is missing from the file, or when a predicted
/// label is outside the corpus label set.
EvaluationReport compare_external(const Corpus& test, const ExternalPredictions& external);

/// Restricts a corpus to the given labels, replacing its label set (aliases
/// of dropped labels are dropped too). Throws DomainError when a requested
/// label is not in the corpus label set or the request is empty.
Corpus subset_corpus(const Corpus& corpus, const std::vector<std::string>& labels);

}  // namespace sniplang

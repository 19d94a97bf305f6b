#include "sniplang/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <thread>
#include <unordered_set>

#include <json.hpp>

#include "sniplang/errors.hpp"
#include "sniplang/rng.hpp"

namespace sniplang {

std::pair<Corpus, Corpus> train_test_split(const Corpus& corpus, double test_fraction,
                                           std::uint64_t seed) {
  if (!(test_fraction > 0.0) || !(test_fraction < 1.0))
    throw DomainError("test fraction must be strictly between 0 and 1");

  std::map<std::string, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < corpus.snippets.size(); ++i)
    by_class[corpus.snippets[i].language].push_back(i);
  for (const auto& [label, members] : by_class)
    if (members.size() < 2)
      throw DomainError("class '" + label + "' has fewer than 2 snippets; cannot split");

  std::vector<bool> in_test(corpus.snippets.size(), false);
  for (auto& [label, members] : by_class) {
    const auto n_test = static_cast<std::size_t>(std::max<long long>(
        1, std::llround(static_cast<double>(members.size()) * test_fraction)));
    SplitMix64 rng(mix_seed(seed, hash_string(label)));
    rng.shuffle(members);
    for (std::size_t i = 0; i < n_test && i < members.size(); ++i) in_test[members[i]] = true;
  }

  Corpus train_part;
  train_part.label_set = corpus.label_set;
  Corpus test_part;
  test_part.label_set = corpus.label_set;
  for (std::size_t i = 0; i < corpus.snippets.size(); ++i)
    (in_test[i] ? test_part : train_part).snippets.push_back(corpus.snippets[i]);
  recount(train_part);
  recount(test_part);
  return {std::move(train_part), std::move(test_part)};
}

EvaluationReport evaluate_model(const MnbModel& model, const Corpus& test) {
  if (test.snippets.empty()) throw DomainError("test corpus is empty");

  const std::size_t n = test.snippets.size();
  std::vector<std::string> predicted(n);
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
  if (n < 2 * workers) {
    for (std::size_t i = 0; i < n; ++i)
      predicted[i] = predict_text(model, test.snippets[i].text).label;
  } else {
    std::vector<std::future<void>> futures;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t begin = 0; begin < n; begin += chunk) {
      const std::size_t end = std::min(n, begin + chunk);
      futures.push_back(std::async(std::launch::async, [&, begin, end] {
        for (std::size_t i = begin; i < end; ++i)
          predicted[i] = predict_text(model, test.snippets[i].text).label;
      }));
    }
    for (auto& future : futures) future.get();
  }

  std::vector<std::string> gold;
  gold.reserve(n);
  for (const Snippet& s : test.snippets) gold.push_back(s.language);
  return metrics(confusion(gold, predicted, test.label_set));
}

namespace {

using ordered_json = nlohmann::ordered_json;

std::string decode_entry(const ExternalPredictions::Entry& entry) {
  if (const auto* label = std::get_if<std::string>(&entry)) return *label;
  const auto& probabilities = std::get<std::map<std::string, double>>(entry);
  auto best = probabilities.begin();
  for (auto it = std::next(best); it != probabilities.end(); ++it)
    if (it->second > best->second) best = it;  // ties keep the smaller label
  return best->first;
}

}  // namespace

ExternalPredictions load_external_predictions(std::istream& in) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const ordered_json::parse_error& e) {
    throw IoError(std::string("invalid predictions file: ") + e.what());
  }
  if (!doc.is_object()) throw IoError("invalid predictions file: top level is not an object");

  ExternalPredictions external;
  for (const auto& [id, value] : doc.items()) {
    if (value.is_string()) {
      external.entries.emplace(id, value.get<std::string>());
    } else if (value.is_object()) {
      if (value.empty())
        throw IoError("invalid predictions file: empty probability map for id '" + id + "'");
      std::map<std::string, double> probabilities;
      for (const auto& [label, prob] : value.items()) {
        if (!prob.is_number())
          throw IoError("invalid predictions file: non-numeric probability for id '" + id + "'");
        const double p = prob.get<double>();
        if (!std::isfinite(p) || p < 0.0)
          throw IoError("invalid predictions file: probability for id '" + id +
                        "' label '" + label + "' is not a finite non-negative number");
        probabilities.emplace(label, p);
      }
      external.entries.emplace(id, std::move(probabilities));
    } else {
      throw IoError("invalid predictions file: entry for id '" + id +
                    "' is neither a label string nor a probability object");
    }
  }
  return external;
}

ExternalPredictions load_external_predictions_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  try {
    return load_external_predictions(in);
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

EvaluationReport compare_external(const Corpus& test, const ExternalPredictions& external) {
  std::vector<std::string> missing;
  for (const Snippet& s : test.snippets)
    if (!external.entries.contains(s.id)) missing.push_back(s.id);
  if (!missing.empty()) {
    constexpr std::size_t kShown = 10;
    std::string message = std::to_string(missing.size()) +
                          " test snippet id(s) missing from external predictions:";
    for (std::size_t i = 0; i < missing.size() && i < kShown; ++i) message += " " + missing[i];
    if (missing.size() > kShown)
      message += " (and " + std::to_string(missing.size() - kShown) + " more)";
    throw DomainError(message);
  }

  std::vector<std::string> gold;
  std::vector<std::string> predicted;
  gold.reserve(test.snippets.size());
  predicted.reserve(test.snippets.size());
  for (const Snippet& s : test.snippets) {
    gold.push_back(s.language);
    std::string label = decode_entry(external.entries.at(s.id));
    if (!test.label_set.contains(label))
      throw DomainError("external prediction for id '" + s.id + "' names unknown label '" +
                        label + "'");
    predicted.push_back(std::move(label));
  }
  return metrics(confusion(gold, predicted, test.label_set));
}

Corpus subset_corpus(const Corpus& corpus, const std::vector<std::string>& labels) {
  if (labels.empty()) throw DomainError("subset label list is empty");
  std::unordered_set<std::string> keep;
  for (const std::string& label : labels) {
    if (!corpus.label_set.contains(label))
      throw DomainError("label '" + label + "' is not in the corpus label set");
    keep.insert(label);
  }

  Corpus subset;
  for (const std::string& label : corpus.label_set.labels)  // preserve label order
    if (keep.contains(label)) {
      subset.label_set.labels.push_back(label);
      if (const auto it = corpus.label_set.tag_aliases.find(label);
          it != corpus.label_set.tag_aliases.end())
        subset.label_set.tag_aliases.emplace(label, it->second);
    }
  for (const Snippet& s : corpus.snippets)
    if (keep.contains(s.language)) subset.snippets.push_back(s);
  recount(subset);
  return subset;
}

}  // namespace sniplang

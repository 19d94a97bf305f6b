#include "sniplang/corpus.hpp"

#include <algorithm>
#include <set>

#include "sniplang/errors.hpp"
#include "sniplang/rng.hpp"

namespace sniplang {

int count_lines(std::string_view text) {
  return 1 + static_cast<int>(std::count(text.begin(), text.end(), '\n'));
}

Snippet make_snippet(std::string id, std::string language, std::string text) {
  Snippet s;
  s.id = std::move(id);
  s.language = std::move(language);
  s.line_count = count_lines(text);
  s.char_count = static_cast<std::int64_t>(text.size());
  s.text = std::move(text);
  return s;
}

bool LabelSet::contains(std::string_view label) const {
  return std::find(labels.begin(), labels.end(), label) != labels.end();
}

std::optional<std::string> LabelSet::label_for_tag(std::string_view tag) const {
  for (const auto& [label, tags] : tag_aliases) {
    if (std::find(tags.begin(), tags.end(), tag) != tags.end()) return label;
  }
  return std::nullopt;
}

void validate_label_set(const LabelSet& label_set) {
  std::set<std::string> seen;
  for (const auto& label : label_set.labels) {
    if (!seen.insert(label).second) throw DomainError("duplicate label '" + label + "'");
  }
  std::map<std::string, std::string> owner;
  for (const auto& [label, tags] : label_set.tag_aliases) {
    if (!seen.count(label))
      throw DomainError("alias entry for unknown label '" + label + "'");
    for (const auto& tag : tags) {
      auto [it, inserted] = owner.emplace(tag, label);
      if (!inserted && it->second != label)
        throw DomainError("tag '" + tag + "' aliased to both '" + it->second + "' and '" +
                          label + "'");
    }
  }
}

Corpus make_corpus(std::vector<Snippet> snippets, LabelSet label_set) {
  Corpus corpus;
  corpus.snippets = std::move(snippets);
  corpus.label_set = std::move(label_set);
  recount(corpus);
  return corpus;
}

void recount(Corpus& corpus) {
  corpus.per_language_counts.clear();
  for (const auto& s : corpus.snippets) {
    if (!corpus.label_set.contains(s.language))
      throw DomainError("snippet '" + s.id + "' has language '" + s.language +
                        "' outside the label set");
    ++corpus.per_language_counts[s.language];
  }
}

LengthStats length_stats(const Corpus& corpus) {
  if (corpus.snippets.empty()) throw DomainError("length_stats: empty corpus");

  std::map<std::string, std::vector<const Snippet*>> by_language;
  for (const auto& s : corpus.snippets) by_language[s.language].push_back(&s);

  LengthStats stats;
  for (auto& [language, group] : by_language) {
    LanguageLengthStats ls;
    ls.count = static_cast<std::int64_t>(group.size());
    double line_sum = 0.0, char_sum = 0.0;
    std::vector<int> lines;
    lines.reserve(group.size());
    for (const Snippet* s : group) {
      line_sum += s->line_count;
      char_sum += static_cast<double>(s->char_count);
      lines.push_back(s->line_count);
    }
    ls.mean_lines = line_sum / static_cast<double>(group.size());
    ls.mean_chars = char_sum / static_cast<double>(group.size());
    std::sort(lines.begin(), lines.end());
    const std::size_t n = lines.size();
    ls.median_lines = (n % 2 == 1) ? lines[n / 2]
                                   : (lines[n / 2 - 1] + lines[n / 2]) / 2.0;
    stats.per_language[language] = ls;
  }
  return stats;
}

struct ReservoirSampler::LabelState {
  SplitMix64 rng;
  std::uint64_t seen = 0;
  std::vector<std::pair<std::uint64_t, Snippet>> kept;  // (arrival index, snippet)

  explicit LabelState(std::uint64_t seed) : rng(seed) {}
};

ReservoirSampler::~ReservoirSampler() = default;
ReservoirSampler::ReservoirSampler(ReservoirSampler&&) noexcept = default;
ReservoirSampler& ReservoirSampler::operator=(ReservoirSampler&&) noexcept = default;

ReservoirSampler::ReservoirSampler(LabelSet label_set, std::size_t cap, std::uint64_t seed)
    : label_set_(std::move(label_set)), cap_(cap), seed_(seed) {
  if (cap_ < 1) throw DomainError("sample cap must be >= 1");
  validate_label_set(label_set_);
  states_.reserve(label_set_.labels.size());
  for (const auto& label : label_set_.labels) {
    slot_of_[label] = states_.size();
    states_.emplace_back(mix_seed(seed_, hash_string(label)));
  }
}

void ReservoirSampler::add(Snippet snippet) {
  auto it = slot_of_.find(snippet.language);
  if (it == slot_of_.end())
    throw DomainError("snippet '" + snippet.id + "' has language '" + snippet.language +
                      "' outside the label set");
  LabelState& st = states_[it->second];
  const std::uint64_t index = st.seen++;
  if (st.kept.size() < cap_) {
    st.kept.emplace_back(index, std::move(snippet));
    return;
  }
  // Algorithm R: the (index+1)-th arrival replaces a kept slot with
  // probability cap / (index+1).
  const std::uint64_t j = st.rng.below(index + 1);
  if (j < cap_) st.kept[j] = {index, std::move(snippet)};
}

Corpus ReservoirSampler::take() && {
  std::vector<Snippet> snippets;
  for (const auto& label : label_set_.labels) {
    LabelState& st = states_[slot_of_[label]];
    std::sort(st.kept.begin(), st.kept.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [index, snippet] : st.kept) snippets.push_back(std::move(snippet));
  }
  return make_corpus(std::move(snippets), std::move(label_set_));
}

Corpus sample_corpus(const std::vector<Snippet>& snippets, const LabelSet& label_set,
                     std::size_t cap, std::uint64_t seed) {
  ReservoirSampler sampler(label_set, cap, seed);
  for (const auto& s : snippets) sampler.add(s);
  return std::move(sampler).take();
}

}  // namespace sniplang

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sniplang {

/// One labeled code fragment. `line_count` is always 1 + the number of
/// newline characters in `text`; `char_count` is the byte length of `text`.
struct Snippet {
  std::string id;        // "<post id>#<code block ordinal>"
  std::string language;
  std::string text;
  int line_count = 1;
  std::int64_t char_count = 0;

  bool operator==(const Snippet&) const = default;
};

int count_lines(std::string_view text);
Snippet make_snippet(std::string id, std::string language, std::string text);

/// The languages of a run plus the question tags that count as each language.
struct LabelSet {
  std::vector<std::string> labels;  // ordered, distinct
  std::map<std::string, std::vector<std::string>> tag_aliases;

  bool contains(std::string_view label) const;
  /// Label owning `tag` via the alias table, if any.
  std::optional<std::string> label_for_tag(std::string_view tag) const;

  bool operator==(const LabelSet&) const = default;
};

/// Throws DomainError on duplicate labels or a tag aliased to two labels.
void validate_label_set(const LabelSet& label_set);

struct Corpus {
  std::vector<Snippet> snippets;
  LabelSet label_set;
  std::map<std::string, std::int64_t> per_language_counts;

  bool operator==(const Corpus&) const = default;
};

/// Builds a corpus and its per-language counts; every snippet language must be
/// in the label set (DomainError otherwise).
Corpus make_corpus(std::vector<Snippet> snippets, LabelSet label_set);
void recount(Corpus& corpus);

struct LanguageLengthStats {
  double mean_lines = 0.0;
  double median_lines = 0.0;
  double mean_chars = 0.0;
  std::int64_t count = 0;
};

struct LengthStats {
  std::map<std::string, LanguageLengthStats> per_language;
};

/// Per-language line/char statistics. Throws DomainError on an empty corpus;
/// languages with zero snippets are omitted from the map.
LengthStats length_stats(const Corpus& corpus);

/// Per-language uniform reservoir sampling with at most `cap` snippets kept
/// per language. Streaming: feed snippets one at a time, then take the corpus.
/// Output is deterministic given the seed; within a language, retained
/// snippets keep their arrival order.
class ReservoirSampler {
 public:
  ReservoirSampler(LabelSet label_set, std::size_t cap, std::uint64_t seed);
  ~ReservoirSampler();  // out of line: LabelState is private to the .cpp
  ReservoirSampler(ReservoirSampler&&) noexcept;
  ReservoirSampler& operator=(ReservoirSampler&&) noexcept;

  void add(Snippet snippet);  // DomainError if language not in the label set
  Corpus take() &&;

 private:
  struct LabelState;
  LabelSet label_set_;
  std::size_t cap_;
  std::uint64_t seed_;
  std::map<std::string, std::size_t> slot_of_;
  std::vector<LabelState> states_;
};

/// Convenience wrapper over ReservoirSampler for in-memory snippet lists.
Corpus sample_corpus(const std::vector<Snippet>& snippets, const LabelSet& label_set,
                     std::size_t cap, std::uint64_t seed);

}  // namespace sniplang

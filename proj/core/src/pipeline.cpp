#include "sniplang/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "sniplang/errors.hpp"

namespace sniplang {

namespace {

bool is_token_char(char c, bool lowercase) {
  if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_') return true;
  return lowercase && c >= 'A' && c <= 'Z';
}

char fold_case(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : c; }

template <typename DocRange>
Vocabulary fit_vocabulary_impl(const DocRange& docs, const PipelineConfig& config) {
  std::map<std::string, std::uint32_t> df;  // ordered: terms come out sorted
  std::uint64_t n_docs = 0;
  std::vector<std::string> scratch;
  for (const auto& doc : docs) {
    ++n_docs;
    scratch = tokenize(doc, config);
    std::sort(scratch.begin(), scratch.end());
    scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
    for (auto& term : scratch) ++df[std::move(term)];
  }

  Vocabulary vocab;
  vocab.n_docs = n_docs;
  for (auto& [term, freq] : df) {
    if (freq < config.min_df) continue;
    vocab.terms.push_back(term);
    vocab.doc_freq.push_back(freq);
  }
  if (vocab.terms.empty()) throw DomainError("empty vocabulary");
  vocab.idf.reserve(vocab.terms.size());
  for (const auto freq : vocab.doc_freq)
    vocab.idf.push_back(std::log((1.0 + static_cast<double>(n_docs)) / (1.0 + freq)) + 1.0);
  reindex(vocab);
  return vocab;
}

struct SnippetTextRange {
  const std::vector<Snippet>& snippets;
  struct Iter {
    std::vector<Snippet>::const_iterator it;
    const std::string& operator*() const { return it->text; }
    Iter& operator++() { ++it; return *this; }
    bool operator!=(const Iter& other) const { return it != other.it; }
  };
  Iter begin() const { return {snippets.begin()}; }
  Iter end() const { return {snippets.end()}; }
};

}  // namespace

void reindex(Vocabulary& vocab) {
  vocab.index_of.clear();
  vocab.index_of.reserve(vocab.terms.size());
  for (std::uint32_t i = 0; i < vocab.terms.size(); ++i) vocab.index_of[vocab.terms[i]] = i;
}

std::string_view feature_mode_name(FeatureMode mode) {
  return mode == FeatureMode::counts ? "counts" : "tfidf";
}

FeatureMode feature_mode_from_name(std::string_view name) {
  if (name == "counts") return FeatureMode::counts;
  if (name == "tfidf") return FeatureMode::tfidf;
  throw DomainError("unknown feature mode '" + std::string(name) + "'");
}

std::string_view select_by_name(SelectBy select_by) {
  return select_by == SelectBy::count ? "count" : "tfidf";
}

SelectBy select_by_from_name(std::string_view name) {
  if (name == "count") return SelectBy::count;
  if (name == "tfidf") return SelectBy::tfidf;
  throw DomainError("unknown selection mode '" + std::string(name) + "'");
}

std::vector<std::string> tokenize(std::string_view text, const PipelineConfig& config) {
  if (config.token_rule != kTokenRuleId)
    throw DomainError("unknown token rule '" + config.token_rule + "'");
  std::vector<std::string> tokens;
  std::string current;
  for (const char c : text) {
    if (is_token_char(c, config.lowercase)) {
      current.push_back(config.lowercase ? fold_case(c) : c);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

Vocabulary fit_vocabulary(const Corpus& corpus, const PipelineConfig& config) {
  if (corpus.snippets.empty()) throw DomainError("cannot fit vocabulary on an empty corpus");
  return fit_vocabulary_impl(SnippetTextRange{corpus.snippets}, config);
}

Vocabulary fit_vocabulary(const std::vector<std::string>& texts,
                          const PipelineConfig& config) {
  if (texts.empty()) throw DomainError("cannot fit vocabulary on an empty corpus");
  return fit_vocabulary_impl(texts, config);
}

SparseVector term_counts(const std::vector<std::string>& tokens, const Vocabulary& vocab) {
  std::map<std::uint32_t, double> counts;
  for (const auto& token : tokens) {
    const auto it = vocab.index_of.find(token);
    if (it != vocab.index_of.end()) counts[it->second] += 1.0;
  }
  std::vector<SparseVector::Entry> entries(counts.begin(), counts.end());
  return SparseVector::from_entries(std::move(entries));
}

SparseVector tfidf_transform(const SparseVector& counts, const Vocabulary& vocab) {
  if (counts.empty()) return counts;
  std::vector<SparseVector::Entry> entries;
  entries.reserve(counts.nnz());
  double norm_sq = 0.0;
  for (const auto& [index, count] : counts.entries()) {
    if (index >= vocab.size())
      throw DomainError("vector index " + std::to_string(index) +
                        " out of range for vocabulary of size " + std::to_string(vocab.size()));
    const double w = count * vocab.idf[index];
    norm_sq += w * w;
    entries.emplace_back(index, w);
  }
  const double norm = std::sqrt(norm_sq);
  if (norm > 0.0) {
    for (auto& [index, weight] : entries) weight /= norm;
  }
  return SparseVector::from_entries(std::move(entries));
}

SparseVector select_top_k(const SparseVector& v, int k) { return select_top_k_by(v, v, k); }

SparseVector select_top_k_by(const SparseVector& v, const SparseVector& key, int k) {
  if (k < 1) throw DomainError("top-k must be >= 1");
  if (v.nnz() <= static_cast<std::size_t>(k)) return v;

  std::vector<SparseVector::Entry> ranked;  // (index, key weight)
  ranked.reserve(v.nnz());
  for (const auto& [index, weight] : v.entries()) ranked.emplace_back(index, key.get(index));
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  ranked.resize(static_cast<std::size_t>(k));

  std::vector<SparseVector::Entry> kept;
  kept.reserve(ranked.size());
  for (const auto& e : ranked) kept.emplace_back(e.first, v.get(e.first));
  return SparseVector::from_entries(std::move(kept));
}

SparseVector vectorize_text(std::string_view text, const Vocabulary& vocab,
                            const PipelineConfig& config) {
  const SparseVector counts = term_counts(tokenize(text, config), vocab);
  SparseVector features =
      config.feature_mode == FeatureMode::tfidf ? tfidf_transform(counts, vocab) : counts;
  if (config.select_by == SelectBy::count) return select_top_k_by(features, counts, config.top_k);
  return select_top_k(features, config.top_k);
}

std::vector<std::pair<SparseVector, std::string>> vectorize_corpus(
    const Corpus& corpus, const Vocabulary& vocab, const PipelineConfig& config) {
  std::vector<std::pair<SparseVector, std::string>> out;
  out.reserve(corpus.snippets.size());
  for (const auto& s : corpus.snippets)
    out.emplace_back(vectorize_text(s.text, vocab, config), s.language);
  return out;
}

}  // namespace sniplang

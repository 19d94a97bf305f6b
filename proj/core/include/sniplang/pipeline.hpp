#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sniplang/corpus.hpp"
#include "sniplang/sparse_vector.hpp"
#include "sniplang/vocabulary.hpp"

namespace sniplang {

enum class FeatureMode { counts, tfidf };
enum class SelectBy { count, tfidf };

inline constexpr std::string_view kTokenRuleId = "identifier_v1";

struct PipelineConfig {
  int top_k = 10;                           // terms kept per snippet
  std::string token_rule = std::string(kTokenRuleId);
  bool lowercase = true;
  FeatureMode feature_mode = FeatureMode::tfidf;
  SelectBy select_by = SelectBy::tfidf;
  std::uint32_t min_df = 1;                 // vocabulary document-frequency cutoff

  bool operator==(const PipelineConfig&) const = default;
};

std::string_view feature_mode_name(FeatureMode mode);
FeatureMode feature_mode_from_name(std::string_view name);
std::string_view select_by_name(SelectBy select_by);
SelectBy select_by_from_name(std::string_view name);

/// Maximal runs of [a-z0-9_] in text order, lowercased (rule "identifier_v1").
/// Everything else separates tokens.
std::vector<std::string> tokenize(std::string_view text, const PipelineConfig& config);

/// Distinct tokens over the corpus, lexicographically indexed, with document
/// frequencies and IDF. Terms below config.min_df are cut. Throws DomainError
/// ("empty vocabulary") when nothing survives.
Vocabulary fit_vocabulary(const Corpus& corpus, const PipelineConfig& config);
Vocabulary fit_vocabulary(const std::vector<std::string>& texts, const PipelineConfig& config);

/// Raw occurrence counts of in-vocabulary tokens; OOV tokens are ignored.
SparseVector term_counts(const std::vector<std::string>& tokens, const Vocabulary& vocab);

/// count * idf per term, then L2 normalization. The zero vector is returned
/// unchanged.
SparseVector tfidf_transform(const SparseVector& counts, const Vocabulary& vocab);

/// Keeps the k entries of largest weight (ties to the smaller term index) and
/// zeroes the rest; vectors with <= k nonzeros pass through unchanged.
SparseVector select_top_k(const SparseVector& v, int k);

/// Same, but ranks v's entries by the matching weights in `key` (used to
/// select by raw count while keeping TF-IDF weights).
SparseVector select_top_k_by(const SparseVector& v, const SparseVector& key, int k);

/// Full per-snippet pipeline: tokenize, count, weight, select.
SparseVector vectorize_text(std::string_view text, const Vocabulary& vocab,
                            const PipelineConfig& config);

/// vectorize_text over a corpus, in corpus order. Snippets vectorizing to the
/// zero vector are kept (they classify by priors alone).
std::vector<std::pair<SparseVector, std::string>> vectorize_corpus(
    const Corpus& corpus, const Vocabulary& vocab, const PipelineConfig& config);

}  // namespace sniplang

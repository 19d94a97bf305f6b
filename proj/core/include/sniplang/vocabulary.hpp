#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sniplang {

/// Term <-> index map fitted on a training corpus, with per-term document
/// frequencies and smoothed IDF weights idf = ln((1+N)/(1+df)) + 1. Terms are
/// sorted lexicographically so indexing is deterministic.
struct Vocabulary {
  std::vector<std::string> terms;
  std::unordered_map<std::string, std::uint32_t> index_of;
  std::vector<std::uint32_t> doc_freq;
  std::vector<double> idf;
  std::uint64_t n_docs = 0;

  std::size_t size() const { return terms.size(); }

  std::optional<std::uint32_t> index(std::string_view term) const {
    // unordered_map lacks heterogeneous lookup pre-C++26; one copy per probe.
    const auto it = index_of.find(std::string(term));
    if (it == index_of.end()) return std::nullopt;
    return it->second;
  }
};

/// Rebuilds index_of from terms (after deserialization).
void reindex(Vocabulary& vocab);

}  // namespace sniplang

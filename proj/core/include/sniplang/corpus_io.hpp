#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>

#include "sniplang/corpus.hpp"

namespace sniplang {

inline constexpr int kCorpusFormatVersion = 1;

/// Line-oriented corpus file: a JSON header line carrying the format version,
/// the label set and the run seed, then one flat JSON record per snippet with
/// fields id, language, text, lines, chars.
void write_corpus(const Corpus& corpus, std::ostream& out, std::uint64_t seed);
void write_corpus_file(const Corpus& corpus, const std::filesystem::path& path,
                       std::uint64_t seed);

/// Inverse of write_corpus. Malformed lines and labels outside the header's
/// label set raise IoError naming the line number.
Corpus read_corpus(std::istream& in, std::uint64_t* seed_out = nullptr);
Corpus read_corpus_file(const std::filesystem::path& path, std::uint64_t* seed_out = nullptr);

/// Tag alias config: one `label: tag1, tag2, ...` line per label; '#' starts
/// a comment. Tags are lowercased. Labels keep file order.
LabelSet parse_alias_config(std::istream& in);
LabelSet read_alias_config_file(const std::filesystem::path& path);

/// The 21 languages of the default run, each mapped to its question tag
/// ("vb.net" additionally claims the bare "vb" tag).
LabelSet default_label_set();

}  // namespace sniplang

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sniplang/corpus.hpp"
#include "sniplang/posts_xml.hpp"

namespace sniplang {

/// All labels whose alias tags intersect the post's tags.
std::vector<std::string> match_labels(const RawPost& post, const LabelSet& label_set);

/// The unique matching label, or nothing when zero or two-plus labels match.
/// Posts tagged with several of the run's languages are dropped this way.
std::optional<std::string> filter_single_language(const RawPost& post,
                                                  const LabelSet& label_set);

struct ExtractStats {
  std::int64_t code_blocks = 0;    // <pre><code> blocks encountered
  std::int64_t dropped_short = 0;  // blocks below the 2-line minimum
};

/// Snippets mined from one post: one per `<code>` element inside `<pre>`
/// blocks of the body, entity-decoded, labeled via filter_single_language.
/// Non-question, unmatched and multi-language posts yield an empty list, as
/// do blocks shorter than two lines. Snippet ids are "<post id>#<ordinal>"
/// where the ordinal numbers the post's code blocks from zero.
std::vector<Snippet> extract_snippets(const RawPost& post, const LabelSet& label_set,
                                      ExtractStats* stats = nullptr);

}  // namespace sniplang

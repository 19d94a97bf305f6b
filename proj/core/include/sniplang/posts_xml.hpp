#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace sniplang {

enum class PostType { question, answer, other };

struct RawPost {
  std::int64_t post_id = 0;
  PostType post_type = PostType::other;
  std::vector<std::string> tags;  // lowercase; only questions carry tags
  std::string body_html;          // attribute value after XML entity decoding
};

struct PostsParseStats {
  std::uint64_t rows_seen = 0;
  std::uint64_t rows_skipped = 0;       // rows missing Id, PostTypeId or Body
  std::size_t buffer_high_water = 0;    // max bytes buffered at once
};

/// Streaming reader for the Stack Exchange dump schema: a document whose
/// `<row .../>` elements carry one post each in attributes Id, PostTypeId,
/// Tags and Body. Memory use is bounded by the largest single row, not the
/// file. Malformed row framing raises IoError with the byte offset.
class PostsXmlParser {
 public:
  explicit PostsXmlParser(std::istream& in, std::size_t chunk_size = 64 * 1024);

  /// Next post in file order, or nullopt at end of document.
  std::optional<RawPost> next();

  const PostsParseStats& stats() const { return stats_; }

 private:
  bool refill();
  bool ensure(std::size_t pos);  // grow buffer until byte `pos` exists
  void compact(std::size_t keep_from);
  [[noreturn]] void fail(std::size_t pos, const std::string& what) const;

  std::istream& in_;
  std::size_t chunk_size_;
  std::string buf_;
  std::size_t base_offset_ = 0;  // absolute offset of buf_[0]
  bool eof_ = false;
  PostsParseStats stats_;
};

}  // namespace sniplang

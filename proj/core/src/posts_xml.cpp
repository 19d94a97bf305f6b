#include "sniplang/posts_xml.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>

#include "sniplang/entities.hpp"
#include "sniplang/errors.hpp"

namespace sniplang {

namespace {

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == ':' || c == '_' || c == '.' ||
         c == '-';
}

std::string to_lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// "<java><android>" -> {"java", "android"}
std::vector<std::string> split_tags(const std::string& decoded) {
  std::vector<std::string> tags;
  std::size_t i = 0;
  while (i < decoded.size()) {
    if (decoded[i] != '<') {
      ++i;
      continue;
    }
    const std::size_t close = decoded.find('>', i + 1);
    if (close == std::string::npos) break;
    std::string tag = to_lower(decoded.substr(i + 1, close - i - 1));
    if (!tag.empty()) tags.push_back(std::move(tag));
    i = close + 1;
  }
  return tags;
}

}  // namespace

PostsXmlParser::PostsXmlParser(std::istream& in, std::size_t chunk_size)
    : in_(in), chunk_size_(std::max<std::size_t>(chunk_size, 16)) {}

bool PostsXmlParser::refill() {
  if (eof_) return false;
  const std::size_t old = buf_.size();
  buf_.resize(old + chunk_size_);
  in_.read(buf_.data() + old, static_cast<std::streamsize>(chunk_size_));
  const std::size_t got = static_cast<std::size_t>(in_.gcount());
  buf_.resize(old + got);
  if (got < chunk_size_) eof_ = true;
  stats_.buffer_high_water = std::max(stats_.buffer_high_water, buf_.size());
  return got > 0;
}

bool PostsXmlParser::ensure(std::size_t pos) {
  while (buf_.size() <= pos) {
    if (!refill()) return false;
  }
  return true;
}

void PostsXmlParser::compact(std::size_t keep_from) {
  if (keep_from == 0) return;
  buf_.erase(0, keep_from);
  base_offset_ += keep_from;
}

void PostsXmlParser::fail(std::size_t pos, const std::string& what) const {
  throw IoError("malformed XML at byte offset " + std::to_string(base_offset_ + pos) + ": " +
                what);
}

std::optional<RawPost> PostsXmlParser::next() {
  for (;;) {
    // Locate the next "<row" element start, discarding inter-row content.
    std::size_t row_start;
    for (;;) {
      const std::size_t idx = buf_.find("<row");
      if (idx == std::string::npos) {
        // Keep a partial "<ro" tail across the refill boundary.
        compact(buf_.size() > 3 ? buf_.size() - 3 : 0);
        if (!refill()) return std::nullopt;  // end of document
        continue;
      }
      if (!ensure(idx + 4)) fail(idx, "unexpected end of input after '<row'");
      const char after = buf_[idx + 4];
      if (after == ' ' || after == '\t' || after == '\n' || after == '\r' || after == '/' ||
          after == '>') {
        row_start = idx;
        break;
      }
      // "<row" followed by a name character ("<rows") is some other element.
      compact(idx + 4);
    }

    compact(row_start);
    std::size_t p = 4;  // past "<row"
    std::map<std::string, std::string> attrs;

    for (;;) {
      if (!ensure(p)) fail(p, "unexpected end of input inside <row>");
      const char c = buf_[p];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++p;
        continue;
      }
      if (c == '/') {
        if (!ensure(p + 1)) fail(p + 1, "unexpected end of input inside <row>");
        if (buf_[p + 1] != '>') fail(p + 1, "expected '>' after '/'");
        p += 2;
        break;
      }
      if (c == '>') {
        ++p;
        break;
      }
      if (!std::isalpha(static_cast<unsigned char>(c)) && c != '_')
        fail(p, std::string("unexpected character '") + c + "' in <row> attributes");

      const std::size_t name_start = p;
      while (ensure(p) && is_name_char(buf_[p])) ++p;
      if (buf_.size() <= p) fail(p, "unexpected end of input in attribute name");
      const std::string name = buf_.substr(name_start, p - name_start);

      while (ensure(p) && (buf_[p] == ' ' || buf_[p] == '\t' || buf_[p] == '\n' ||
                           buf_[p] == '\r'))
        ++p;
      if (buf_.size() <= p || buf_[p] != '=') fail(p, "expected '=' after attribute name");
      ++p;
      while (ensure(p) && (buf_[p] == ' ' || buf_[p] == '\t' || buf_[p] == '\n' ||
                           buf_[p] == '\r'))
        ++p;
      if (buf_.size() <= p || (buf_[p] != '"' && buf_[p] != '\''))
        fail(p, "expected quoted attribute value");
      const char quote = buf_[p];
      const std::size_t value_start = ++p;
      std::size_t close = buf_.find(quote, p);
      while (close == std::string::npos) {
        if (!refill()) fail(value_start - 1, "unterminated attribute value");
        close = buf_.find(quote, p);
      }
      attrs[name] = decode_entities(
          std::string_view(buf_).substr(value_start, close - value_start));
      p = close + 1;
    }

    ++stats_.rows_seen;
    const std::size_t row_end = p;

    const auto id_it = attrs.find("Id");
    const auto type_it = attrs.find("PostTypeId");
    const auto body_it = attrs.find("Body");
    std::int64_t post_id = 0;
    bool id_ok = false;
    if (id_it != attrs.end()) {
      const std::string& raw = id_it->second;
      const auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), post_id);
      id_ok = ec == std::errc() && ptr == raw.data() + raw.size() && post_id > 0;
    }
    if (!id_ok || type_it == attrs.end() || body_it == attrs.end()) {
      ++stats_.rows_skipped;
      compact(row_end);
      continue;
    }

    RawPost post;
    post.post_id = post_id;
    post.post_type = type_it->second == "1"   ? PostType::question
                     : type_it->second == "2" ? PostType::answer
                                              : PostType::other;
    if (post.post_type == PostType::question) {
      if (const auto tags_it = attrs.find("Tags"); tags_it != attrs.end())
        post.tags = split_tags(tags_it->second);
    }
    post.body_html = std::move(body_it->second);

    compact(row_end);
    return post;
  }
}

}  // namespace sniplang

#include "sniplang/snippet_extract.hpp"

#include <algorithm>
#include <cctype>

#include "sniplang/entities.hpp"

namespace sniplang {

namespace {

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp <= 0x7f) {
    out.push_back(static_cast<char>(cp));
  } else if (cp <= 0x7ff) {
    out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else if (cp <= 0xffff) {
    out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else if (cp <= 0x10ffff) {
    out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  }
}

// Finds "<name" followed by attributes up to '>', starting at `from`.
// Returns the index just past '>' or npos.
std::size_t find_open_tag(std::string_view html, std::string_view name, std::size_t from,
                          std::size_t* tag_start = nullptr) {
  const std::string opener = std::string("<") + std::string(name);
  std::size_t i = from;
  while ((i = html.find(opener, i)) != std::string_view::npos) {
    const std::size_t after = i + opener.size();
    if (after < html.size() &&
        (html[after] == '>' || std::isspace(static_cast<unsigned char>(html[after])))) {
      const std::size_t close = html.find('>', after);
      if (close == std::string_view::npos) return std::string_view::npos;
      if (tag_start) *tag_start = i;
      return close + 1;
    }
    i = after;
  }
  return std::string_view::npos;
}

}  // namespace

std::string decode_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '&') {
      out.push_back(text[i++]);
      continue;
    }
    const std::size_t semi = text.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out.push_back(text[i++]);
      continue;
    }
    const std::string_view body = text.substr(i + 1, semi - i - 1);
    if (body == "lt") {
      out.push_back('<');
    } else if (body == "gt") {
      out.push_back('>');
    } else if (body == "amp") {
      out.push_back('&');
    } else if (body == "quot") {
      out.push_back('"');
    } else if (body == "apos") {
      out.push_back('\'');
    } else if (body.size() >= 2 && body[0] == '#') {
      std::uint32_t cp = 0;
      bool ok = false;
      if (body[1] == 'x' || body[1] == 'X') {
        for (std::size_t k = 2; k < body.size(); ++k) {
          const char c = body[k];
          const int digit = c >= '0' && c <= '9'   ? c - '0'
                            : c >= 'a' && c <= 'f' ? c - 'a' + 10
                            : c >= 'A' && c <= 'F' ? c - 'A' + 10
                                                   : -1;
          if (digit < 0) {
            ok = false;
            break;
          }
          cp = cp * 16 + static_cast<std::uint32_t>(digit);
          ok = true;
        }
      } else {
        for (std::size_t k = 1; k < body.size(); ++k) {
          const char c = body[k];
          if (c < '0' || c > '9') {
            ok = false;
            break;
          }
          cp = cp * 10 + static_cast<std::uint32_t>(c - '0');
          ok = true;
        }
      }
      if (!ok || cp > 0x10ffff) {
        out.push_back(text[i++]);
        continue;
      }
      append_utf8(out, cp);
    } else {
      out.push_back(text[i++]);  // unknown entity, keep verbatim
      continue;
    }
    i = semi + 1;
  }
  return out;
}

std::vector<std::string> match_labels(const RawPost& post, const LabelSet& label_set) {
  std::vector<std::string> matched;
  for (const auto& tag : post.tags) {
    if (auto label = label_set.label_for_tag(tag)) {
      if (std::find(matched.begin(), matched.end(), *label) == matched.end())
        matched.push_back(*label);
    }
  }
  return matched;
}

std::optional<std::string> filter_single_language(const RawPost& post,
                                                  const LabelSet& label_set) {
  auto matched = match_labels(post, label_set);
  if (matched.size() != 1) return std::nullopt;
  return matched.front();
}

std::vector<Snippet> extract_snippets(const RawPost& post, const LabelSet& label_set,
                                      ExtractStats* stats) {
  std::vector<Snippet> snippets;
  if (post.post_type != PostType::question) return snippets;
  const auto label = filter_single_language(post, label_set);
  if (!label) return snippets;

  const std::string_view html = post.body_html;
  std::size_t pos = 0;
  int ordinal = 0;
  for (;;) {
    const std::size_t pre_content = find_open_tag(html, "pre", pos);
    if (pre_content == std::string_view::npos) break;
    const std::size_t pre_end = html.find("</pre>", pre_content);
    if (pre_end == std::string_view::npos) break;
    const std::string_view block = html.substr(pre_content, pre_end - pre_content);

    std::size_t inner = 0;
    for (;;) {
      const std::size_t code_content = find_open_tag(block, "code", inner);
      if (code_content == std::string_view::npos) break;
      const std::size_t code_end = block.find("</code>", code_content);
      if (code_end == std::string_view::npos) break;

      if (stats) ++stats->code_blocks;
      std::string text = decode_entities(block.substr(code_content, code_end - code_content));
      Snippet s = make_snippet(std::to_string(post.post_id) + "#" + std::to_string(ordinal),
                               *label, std::move(text));
      ++ordinal;
      if (s.line_count >= 2) {
        snippets.push_back(std::move(s));
      } else if (stats) {
        ++stats->dropped_short;
      }
      inner = code_end + 7;
    }
    pos = pre_end + 6;
  }
  return snippets;
}

}  // namespace sniplang

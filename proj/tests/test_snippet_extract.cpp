#include <doctest.h>

#include <string>
#include <vector>

#include "sniplang/entities.hpp"
#include "sniplang/snippet_extract.hpp"

using namespace sniplang;

namespace {

LabelSet java_c_labels() {
  LabelSet ls;
  ls.labels = {"java", "c"};
  ls.tag_aliases = {{"java", {"java"}}, {"c", {"c"}}};
  return ls;
}

RawPost question(std::int64_t id, std::vector<std::string> tags, std::string body) {
  RawPost post;
  post.post_id = id;
  post.post_type = PostType::question;
  post.tags = std::move(tags);
  post.body_html = std::move(body);
  return post;
}

}  // namespace

TEST_CASE("entity decoding") {
  CHECK(decode_entities("x &lt; y &amp;&amp; y &gt; z") == "x < y && y > z");
  CHECK(decode_entities("&quot;s&quot; &apos;c&apos;") == "\"s\" 'c'");
  CHECK(decode_entities("&#65;&#x42;&#x63;") == "ABc");
  CHECK(decode_entities("&#x1F600;") == "\xF0\x9F\x98\x80");  // 4-byte UTF-8
  SUBCASE("unknown or malformed entities stay verbatim") {
    CHECK(decode_entities("&nbsp;") == "&nbsp;");
    CHECK(decode_entities("a & b") == "a & b");
    CHECK(decode_entities("&#xZZ;") == "&#xZZ;");
    CHECK(decode_entities("&#;") == "&#;");
    CHECK(decode_entities("&toolongtobeanentityname;") == "&toolongtobeanentityname;");
  }
}

TEST_CASE("match_labels and filter_single_language") {
  const LabelSet ls = java_c_labels();
  CHECK(match_labels(question(1, {"java", "android"}, ""), ls) ==
        std::vector<std::string>{"java"});
  CHECK(match_labels(question(1, {"java", "c"}, ""), ls) ==
        std::vector<std::string>{"java", "c"});
  CHECK(match_labels(question(1, {"android"}, ""), ls).empty());

  CHECK(filter_single_language(question(1, {"java"}, ""), ls) ==
        std::optional<std::string>("java"));
  CHECK_FALSE(filter_single_language(question(1, {"java", "c"}, ""), ls).has_value());
  CHECK_FALSE(filter_single_language(question(1, {}, ""), ls).has_value());
}

TEST_CASE("extracts one snippet per code block inside pre, with ordinal ids") {
  const std::string body =
      "<p>intro</p>"
      "<pre><code>int a;\nint b;</code></pre>"
      "<p>middle <code>inline()</code></p>"
      "<pre class=\"lang-java\"><code>int c;\nint d;\nint e;</code></pre>";
  ExtractStats stats;
  const auto snippets = extract_snippets(question(12, {"java"}, body), java_c_labels(), &stats);
  REQUIRE(snippets.size() == 2);
  CHECK(snippets[0].id == "12#0");
  CHECK(snippets[0].text == "int a;\nint b;");
  CHECK(snippets[0].line_count == 2);
  CHECK(snippets[1].id == "12#1");
  CHECK(snippets[1].line_count == 3);
  CHECK(stats.code_blocks == 2);
  CHECK(stats.dropped_short == 0);
}

TEST_CASE("code entities decode; one-line blocks drop but keep their ordinal") {
  const std::string body =
      "<pre><code>one_liner();</code></pre>"
      "<pre><code>if (a &lt; b)\n  a &amp;= b;</code></pre>";
  ExtractStats stats;
  const auto snippets = extract_snippets(question(7, {"c"}, body), java_c_labels(), &stats);
  REQUIRE(snippets.size() == 1);
  CHECK(snippets[0].id == "7#1");  // ordinal 0 was the dropped one-liner
  CHECK(snippets[0].text == "if (a < b)\n  a &= b;");
  CHECK(stats.code_blocks == 2);
  CHECK(stats.dropped_short == 1);
}

TEST_CASE("non-questions, multi-language and unmatched posts yield nothing") {
  const std::string body = "<pre><code>x\ny</code></pre>";
  const LabelSet ls = java_c_labels();

  RawPost answer;
  answer.post_id = 1;
  answer.post_type = PostType::answer;
  answer.body_html = body;
  CHECK(extract_snippets(answer, ls).empty());

  CHECK(extract_snippets(question(2, {"java", "c"}, body), ls).empty());
  CHECK(extract_snippets(question(3, {"python"}, body), ls).empty());
}

TEST_CASE("code outside pre and pre without code are ignored") {
  const std::string body =
      "<code>free\nstanding</code>"
      "<pre>no code child\nhere</pre>"
      "<pre><code>kept\nkept</code></pre>";
  ExtractStats stats;
  const auto snippets = extract_snippets(question(4, {"c"}, body), java_c_labels(), &stats);
  REQUIRE(snippets.size() == 1);
  CHECK(snippets[0].text == "kept\nkept");
  CHECK(stats.code_blocks == 1);
}

TEST_CASE("tags like precious do not open a pre block") {
  const std::string body = "<precious><code>a\nb</code></precious>"
                           "<pre><code>c\nd</code></pre>";
  const auto snippets = extract_snippets(question(5, {"c"}, body), java_c_labels());
  REQUIRE(snippets.size() == 1);
  CHECK(snippets[0].text == "c\nd");
}

#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "sniplang/errors.hpp"
#include "sniplang/posts_xml.hpp"

using namespace sniplang;

namespace {

std::vector<RawPost> parse_all(const std::string& xml, PostsParseStats* stats = nullptr,
                               std::size_t chunk = 64 * 1024) {
  std::istringstream in(xml);
  PostsXmlParser parser(in, chunk);
  std::vector<RawPost> posts;
  while (auto post = parser.next()) posts.push_back(std::move(*post));
  if (stats) *stats = parser.stats();
  return posts;
}

}  // namespace

TEST_CASE("parses question rows with tags and an entity-encoded body") {
  const std::string xml =
      "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n<posts>\n"
      "  <row Id=\"4\" PostTypeId=\"1\" Tags=\"&lt;java&gt;&lt;Android&gt;\" "
      "Body=\"&lt;p&gt;hi&lt;/p&gt;\" />\n"
      "</posts>\n";
  const auto posts = parse_all(xml);
  REQUIRE(posts.size() == 1);
  CHECK(posts[0].post_id == 4);
  CHECK(posts[0].post_type == PostType::question);
  CHECK(posts[0].tags == std::vector<std::string>{"java", "android"});  // lowercased
  CHECK(posts[0].body_html == "<p>hi</p>");
}

TEST_CASE("answers carry no tags; unknown PostTypeId maps to other") {
  const std::string xml =
      "<posts>"
      "<row Id=\"1\" PostTypeId=\"2\" Tags=\"&lt;java&gt;\" Body=\"a\"/>"
      "<row Id=\"2\" PostTypeId=\"7\" Body=\"b\"/>"
      "</posts>";
  const auto posts = parse_all(xml);
  REQUIRE(posts.size() == 2);
  CHECK(posts[0].post_type == PostType::answer);
  CHECK(posts[0].tags.empty());
  CHECK(posts[1].post_type == PostType::other);
}

TEST_CASE("rows missing Id, PostTypeId or Body are skipped and counted") {
  const std::string xml =
      "<posts>"
      "<row PostTypeId=\"1\" Body=\"x\"/>"
      "<row Id=\"3\" Body=\"x\"/>"
      "<row Id=\"4\" PostTypeId=\"1\"/>"
      "<row Id=\"zero\" PostTypeId=\"1\" Body=\"x\"/>"
      "<row Id=\"5\" PostTypeId=\"1\" Body=\"ok\"/>"
      "</posts>";
  PostsParseStats stats;
  const auto posts = parse_all(xml, &stats);
  REQUIRE(posts.size() == 1);
  CHECK(posts[0].post_id == 5);
  CHECK(stats.rows_seen == 5);
  CHECK(stats.rows_skipped == 4);
}

TEST_CASE("attribute forms: single quotes, whitespace around '=', multiline rows") {
  const std::string xml =
      "<posts><row\n  Id = '9'\n  PostTypeId =\t\"1\"\n  Body='line'\n/></posts>";
  const auto posts = parse_all(xml);
  REQUIRE(posts.size() == 1);
  CHECK(posts[0].post_id == 9);
}

TEST_CASE("elements whose names merely start with 'row' are not rows") {
  const std::string xml =
      "<posts><rowset x=\"1\"/><row Id=\"2\" PostTypeId=\"1\" Body=\"b\"/></posts>";
  const auto posts = parse_all(xml);
  REQUIRE(posts.size() == 1);
  CHECK(posts[0].post_id == 2);
}

TEST_CASE("truncated input fails with the absolute byte offset") {
  const std::string xml = "<posts>\n<row Id=";  // 16 bytes, cut inside the attribute
  std::istringstream in(xml);
  PostsXmlParser parser(in);
  CHECK_THROWS_WITH_AS(parser.next(), "malformed XML at byte offset 16: expected quoted "
                                      "attribute value",
                       IoError);
}

TEST_CASE("unterminated attribute value is malformed") {
  std::istringstream in("<row Id=\"1");
  PostsXmlParser parser(in);
  CHECK_THROWS_AS(parser.next(), IoError);
}

TEST_CASE("memory stays bounded by row size, not file size") {
  std::string xml = "<posts>";
  for (int i = 1; i <= 500; ++i)
    xml += "<row Id=\"" + std::to_string(i) + "\" PostTypeId=\"2\" Body=\"0123456789\"/>";
  xml += "</posts>";

  PostsParseStats stats;
  const auto posts = parse_all(xml, &stats, /*chunk=*/64);
  CHECK(posts.size() == 500);
  CHECK(stats.buffer_high_water < 256);  // one row plus slack; file is ~25 KiB
}

TEST_CASE("offsets remain correct across refill boundaries") {
  // Small chunks force the row to straddle many refills.
  std::string xml = "<posts>" + std::string(100, ' ');
  xml += "<row Id=\"77\" PostTypeId=\"1\" Tags=\"&lt;c&gt;\" Body=\"";
  xml += std::string(300, 'x');
  xml += "\"/></posts>";
  const auto posts = parse_all(xml, nullptr, /*chunk=*/16);
  REQUIRE(posts.size() == 1);
  CHECK(posts[0].post_id == 77);
  CHECK(posts[0].body_html == std::string(300, 'x'));
}

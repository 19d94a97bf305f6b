#include "sniplang/corpus_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <string>

#include <json.hpp>

#include "sniplang/errors.hpp"

namespace sniplang {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string to_lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

[[noreturn]] void line_error(std::size_t line_no, const std::string& what) {
  throw IoError("corpus line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

void write_corpus(const Corpus& corpus, std::ostream& out, std::uint64_t seed) {
  ordered_json header;
  header["format"] = "sniplang.corpus";
  header["version"] = kCorpusFormatVersion;
  header["seed"] = seed;
  header["labels"] = corpus.label_set.labels;
  ordered_json aliases = ordered_json::object();
  for (const auto& [label, tags] : corpus.label_set.tag_aliases) aliases[label] = tags;
  header["tag_aliases"] = std::move(aliases);
  out << header.dump() << '\n';

  for (const auto& s : corpus.snippets) {
    ordered_json rec;
    rec["id"] = s.id;
    rec["language"] = s.language;
    rec["text"] = s.text;
    rec["lines"] = s.line_count;
    rec["chars"] = s.char_count;
    out << rec.dump() << '\n';
  }
  if (!out) throw IoError("failed writing corpus stream");
}

void write_corpus_file(const Corpus& corpus, const std::filesystem::path& path,
                       std::uint64_t seed) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open corpus file for writing: " + path.string());
  write_corpus(corpus, out, seed);
}

Corpus read_corpus(std::istream& in, std::uint64_t* seed_out) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("corpus file is empty (missing header line)");

  LabelSet label_set;
  try {
    const auto header = ordered_json::parse(line);
    if (header.at("format").get<std::string>() != "sniplang.corpus")
      throw IoError("not a corpus file (format field mismatch)");
    if (header.at("version").get<int>() != kCorpusFormatVersion)
      throw IoError("unsupported corpus format version");
    label_set.labels = header.at("labels").get<std::vector<std::string>>();
    if (header.contains("tag_aliases")) {
      for (const auto& [label, tags] : header.at("tag_aliases").items())
        label_set.tag_aliases[label] = tags.get<std::vector<std::string>>();
    }
    if (seed_out) *seed_out = header.value("seed", std::uint64_t{0});
  } catch (const ordered_json::exception& e) {
    throw IoError(std::string("corpus header line: ") + e.what());
  }
  validate_label_set(label_set);

  std::vector<Snippet> snippets;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    Snippet s;
    try {
      const auto rec = ordered_json::parse(line);
      s.id = rec.at("id").get<std::string>();
      s.language = rec.at("language").get<std::string>();
      s.text = rec.at("text").get<std::string>();
      s.line_count = rec.at("lines").get<int>();
      s.char_count = rec.at("chars").get<std::int64_t>();
    } catch (const ordered_json::exception& e) {
      line_error(line_no, e.what());
    }
    if (!label_set.contains(s.language))
      line_error(line_no, "unknown label '" + s.language + "'");
    if (s.line_count != count_lines(s.text))
      line_error(line_no, "line count field does not match text");
    if (s.char_count != static_cast<std::int64_t>(s.text.size()))
      line_error(line_no, "char count field does not match text");
    snippets.push_back(std::move(s));
  }
  return make_corpus(std::move(snippets), std::move(label_set));
}

Corpus read_corpus_file(const std::filesystem::path& path, std::uint64_t* seed_out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus file: " + path.string());
  try {
    return read_corpus(in, seed_out);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

LabelSet parse_alias_config(std::istream& in) {
  LabelSet label_set;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const std::size_t colon = stripped.find(':');
    if (colon == std::string::npos)
      throw IoError("alias config line " + std::to_string(line_no) +
                    ": expected 'label: tag1, tag2, ...'");
    const std::string label = trim(stripped.substr(0, colon));
    if (label.empty())
      throw IoError("alias config line " + std::to_string(line_no) + ": empty label");
    std::vector<std::string> tags;
    std::string rest = stripped.substr(colon + 1);
    std::size_t start = 0;
    while (start <= rest.size()) {
      const std::size_t comma = rest.find(',', start);
      const std::string tag =
          to_lower(trim(rest.substr(start, comma == std::string::npos ? std::string::npos
                                                                      : comma - start)));
      if (!tag.empty()) tags.push_back(tag);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (tags.empty())
      throw IoError("alias config line " + std::to_string(line_no) + ": no tags for '" +
                    label + "'");
    if (label_set.contains(label))
      throw IoError("alias config line " + std::to_string(line_no) + ": duplicate label '" +
                    label + "'");
    label_set.labels.push_back(label);
    label_set.tag_aliases[label] = std::move(tags);
  }
  try {
    validate_label_set(label_set);
  } catch (const DomainError& e) {
    throw IoError(std::string("alias config: ") + e.what());
  }
  return label_set;
}

LabelSet read_alias_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open alias config: " + path.string());
  return parse_alias_config(in);
}

LabelSet default_label_set() {
  LabelSet ls;
  const std::vector<std::pair<std::string, std::vector<std::string>>> entries = {
      {"bash", {"bash"}},
      {"c", {"c"}},
      {"c#", {"c#"}},
      {"c++", {"c++"}},
      {"css", {"css"}},
      {"haskell", {"haskell"}},
      {"html", {"html"}},
      {"java", {"java"}},
      {"javascript", {"javascript"}},
      {"lua", {"lua"}},
      {"objective-c", {"objective-c"}},
      {"perl", {"perl"}},
      {"php", {"php"}},
      {"python", {"python"}},
      {"r", {"r"}},
      {"ruby", {"ruby"}},
      {"scala", {"scala"}},
      {"sql", {"sql"}},
      {"swift", {"swift"}},
      {"vb.net", {"vb.net", "vb"}},
      {"markdown", {"markdown"}},
  };
  for (const auto& [label, tags] : entries) {
    ls.labels.push_back(label);
    ls.tag_aliases[label] = tags;
  }
  return ls;
}

}  // namespace sniplang

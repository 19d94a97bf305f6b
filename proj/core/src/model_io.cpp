#include "sniplang/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "sniplang/errors.hpp"

namespace sniplang {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void bad_model(const std::string& what) {
  throw IoError("invalid model file: " + what);
}

}  // namespace

void save_model(const MnbModel& model, std::uint64_t seed, std::ostream& out) {
  ordered_json doc;
  doc["format"] = "sniplang.model";
  doc["format_version"] = model.format_version;
  doc["seed"] = seed;
  doc["alpha"] = model.alpha;
  doc["config"] = {{"top_k", model.config.top_k},
                   {"token_rule", model.config.token_rule},
                   {"lowercase", model.config.lowercase},
                   {"features", std::string(feature_mode_name(model.config.feature_mode))},
                   {"select_by", std::string(select_by_name(model.config.select_by))},
                   {"min_df", model.config.min_df}};
  doc["labels"] = model.labels;
  doc["log_prior"] = model.log_prior;
  doc["vocabulary"] = {{"n_docs", model.vocab.n_docs},
                       {"terms", model.vocab.terms},
                       {"doc_freq", model.vocab.doc_freq},
                       {"idf", model.vocab.idf}};
  doc["log_likelihood"] = model.log_likelihood;
  out << doc.dump() << '\n';
  if (!out) throw IoError("failed writing model");
}

void save_model_file(const MnbModel& model, std::uint64_t seed, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  save_model(model, seed, out);
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

MnbModel load_model(std::istream& in, std::uint64_t* seed_out) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const ordered_json::parse_error& e) {
    bad_model(e.what());
  }

  try {
    if (doc.at("format").get<std::string>() != "sniplang.model")
      bad_model("unexpected format tag");
    MnbModel model;
    model.format_version = doc.at("format_version").get<int>();
    if (model.format_version != kModelFormatVersion)
      bad_model("unsupported format_version " + std::to_string(model.format_version));
    if (seed_out) *seed_out = doc.at("seed").get<std::uint64_t>();
    model.alpha = doc.at("alpha").get<double>();
    if (!(model.alpha > 0.0)) bad_model("alpha must be positive");

    const auto& cfg = doc.at("config");
    model.config.top_k = cfg.at("top_k").get<int>();
    model.config.token_rule = cfg.at("token_rule").get<std::string>();
    model.config.lowercase = cfg.at("lowercase").get<bool>();
    model.config.feature_mode = feature_mode_from_name(cfg.at("features").get<std::string>());
    model.config.select_by = select_by_from_name(cfg.at("select_by").get<std::string>());
    model.config.min_df = cfg.at("min_df").get<std::uint32_t>();

    model.labels = doc.at("labels").get<std::vector<std::string>>();
    if (model.labels.size() < 2) bad_model("fewer than 2 labels");
    if (!std::is_sorted(model.labels.begin(), model.labels.end()))
      bad_model("labels are not sorted");
    model.log_prior = doc.at("log_prior").get<std::vector<double>>();
    if (model.log_prior.size() != model.labels.size())
      bad_model("log_prior length does not match labels");

    const auto& voc = doc.at("vocabulary");
    model.vocab.n_docs = voc.at("n_docs").get<std::uint64_t>();
    model.vocab.terms = voc.at("terms").get<std::vector<std::string>>();
    model.vocab.doc_freq = voc.at("doc_freq").get<std::vector<std::uint32_t>>();
    model.vocab.idf = voc.at("idf").get<std::vector<double>>();
    if (model.vocab.doc_freq.size() != model.vocab.terms.size() ||
        model.vocab.idf.size() != model.vocab.terms.size())
      bad_model("vocabulary arrays disagree on length");
    if (!std::is_sorted(model.vocab.terms.begin(), model.vocab.terms.end()))
      bad_model("vocabulary terms are not sorted");
    for (std::size_t i = 0; i < model.vocab.terms.size(); ++i) {
      if (i > 0 && model.vocab.terms[i] == model.vocab.terms[i - 1])
        bad_model("duplicate vocabulary term '" + model.vocab.terms[i] + "'");
      model.vocab.index_of.emplace(model.vocab.terms[i], static_cast<std::uint32_t>(i));
    }

    model.log_likelihood = doc.at("log_likelihood").get<std::vector<std::vector<double>>>();
    if (model.log_likelihood.size() != model.labels.size())
      bad_model("log_likelihood row count does not match labels");
    for (const auto& row : model.log_likelihood)
      if (row.size() != model.vocab.terms.size())
        bad_model("log_likelihood row length does not match vocabulary");
    return model;
  } catch (const ordered_json::exception& e) {
    bad_model(e.what());
  }
}

MnbModel load_model_file(const std::string& path, std::uint64_t* seed_out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  try {
    return load_model(in, seed_out);
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

}  // namespace sniplang

// Command-line front end: ingest / train / predict / evaluate / compare /
// stats. Diagnostics go to stderr; only machine-consumable output (labels,
// JSON, CSV, tables) goes to stdout. Exit codes: 0 success, 2 input or IO
// errors, 3 domain errors.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sniplang/corpus.hpp"
#include "sniplang/corpus_io.hpp"
#include "sniplang/cross_validation.hpp"
#include "sniplang/errors.hpp"
#include "sniplang/evaluate.hpp"
#include "sniplang/metrics.hpp"
#include "sniplang/mnb.hpp"
#include "sniplang/model_io.hpp"
#include "sniplang/pipeline.hpp"
#include "sniplang/posts_xml.hpp"
#include "sniplang/snippet_extract.hpp"

namespace {

using namespace sniplang;

struct IngestOpts {
  std::string posts_path;
  std::string aliases_path;
  std::size_t cap = 12000;
  std::uint64_t seed = 42;
  std::string out_path;
};

void run_ingest(const IngestOpts& opts) {
  const LabelSet label_set =
      opts.aliases_path.empty() ? default_label_set() : read_alias_config_file(opts.aliases_path);

  std::ifstream posts(opts.posts_path, std::ios::binary);
  if (!posts) throw IoError("cannot open " + opts.posts_path);

  PostsXmlParser parser(posts);
  ReservoirSampler sampler(label_set, opts.cap, opts.seed);
  ExtractStats extract_stats;
  std::int64_t matched_questions = 0;
  std::int64_t multi_language_dropped = 0;
  while (auto post = parser.next()) {
    if (post->post_type != PostType::question) continue;
    const std::vector<std::string> labels = match_labels(*post, label_set);
    if (labels.empty()) continue;
    if (labels.size() > 1) {
      ++multi_language_dropped;
      continue;
    }
    ++matched_questions;
    for (Snippet& s : extract_snippets(*post, label_set, &extract_stats))
      sampler.add(std::move(s));
  }

  const Corpus corpus = std::move(sampler).take();
  if (corpus.snippets.empty()) throw DomainError("no snippets extracted from " + opts.posts_path);
  write_corpus_file(corpus, opts.out_path, opts.seed);

  const PostsParseStats& ps = parser.stats();
  std::cerr << "rows: " << ps.rows_seen << " (" << ps.rows_skipped << " skipped)\n"
            << "single-language questions: " << matched_questions
            << "; multi-language questions dropped: " << multi_language_dropped << '\n'
            << "code blocks: " << extract_stats.code_blocks << " (" << extract_stats.dropped_short
            << " below 2 lines dropped)\n"
            << "kept per language:\n";
  std::int64_t total = 0;
  for (const auto& [language, count] : corpus.per_language_counts) {
    std::cerr << "  " << language << ' ' << count << '\n';
    total += count;
  }
  std::cerr << "total: " << total << " snippets -> " << opts.out_path << '\n';
}

struct TrainOpts {
  std::string corpus_path;
  std::string out_path;
  std::vector<double> alpha_grid;
  int folds = 10;
  std::uint64_t seed = 42;
  std::optional<double> split_fraction;
  PipelineConfig config;
};

void run_train(const TrainOpts& opts) {
  Corpus corpus = read_corpus_file(opts.corpus_path);
  if (opts.split_fraction)
    corpus = train_test_split(corpus, *opts.split_fraction, opts.seed).first;

  std::vector<std::string> texts;
  std::vector<std::string> labels;
  texts.reserve(corpus.snippets.size());
  labels.reserve(corpus.snippets.size());
  for (const Snippet& s : corpus.snippets) {
    texts.push_back(s.text);
    labels.push_back(s.language);
  }

  const std::vector<double> grid =
      opts.alpha_grid.empty() ? default_alpha_grid() : opts.alpha_grid;
  const GridSearchResult search =
      grid_search_cv(texts, labels, grid, opts.folds, opts.seed, opts.config);
  char line[96];
  for (std::size_t a = 0; a < search.alpha_grid.size(); ++a) {
    std::snprintf(line, sizeof line, "alpha %-8g mean cv accuracy %.4f\n", search.alpha_grid[a],
                  search.mean_cv_accuracy[a]);
    std::cerr << line;
  }
  std::snprintf(line, sizeof line, "best alpha: %g (%d folds, seed %llu)\n", search.best_alpha,
                search.fold_count, static_cast<unsigned long long>(search.seed));
  std::cerr << line;

  const Vocabulary vocab = fit_vocabulary(texts, opts.config);
  std::vector<std::pair<SparseVector, std::string>> vectors;
  vectors.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i)
    vectors.emplace_back(vectorize_text(texts[i], vocab, opts.config), labels[i]);
  const MnbModel model = train(vectors, search.best_alpha, vocab, opts.config);
  save_model_file(model, opts.seed, opts.out_path);
  std::cerr << "model: " << model.labels.size() << " labels, " << model.vocab.size()
            << " terms -> " << opts.out_path << '\n';
}

struct PredictOpts {
  std::string model_path;
  std::string input_path;  // empty: standard input
};

void run_predict(const PredictOpts& opts) {
  const MnbModel model = load_model_file(opts.model_path);

  std::string text;
  if (opts.input_path.empty()) {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    text = buffer.str();
  } else {
    std::ifstream in(opts.input_path, std::ios::binary);
    if (!in) throw IoError("cannot open " + opts.input_path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  }

  const SparseVector v = vectorize_text(text, model.vocab, model.config);
  if (v.empty())
    std::cerr << "warning: input has no in-vocabulary tokens; prediction reflects class priors"
                 " only\n";
  const Prediction p = predict(model, v);

  std::vector<std::size_t> order(model.labels.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (p.posterior[a] != p.posterior[b]) return p.posterior[a] > p.posterior[b];
    return model.labels[a] < model.labels[b];
  });

  std::cout << p.label << '\n';
  char line[96];
  for (std::size_t i = 0; i < order.size() && i < 3; ++i) {
    std::snprintf(line, sizeof line, "%s %.6f\n", model.labels[order[i]].c_str(),
                  p.posterior[order[i]]);
    std::cout << line;
  }
}

struct EvaluateOpts {
  std::string model_path;
  std::string corpus_path;
  std::string test_path;  // pre-split test corpus; excludes --split
  std::optional<double> split_fraction;
  std::uint64_t seed = 42;
  std::string format = "text";
};

void print_report(const EvaluationReport& report, const std::string& format,
                  std::uint64_t seed) {
  if (format == "json") {
    std::cout << report_to_json(report, seed);
  } else {
    std::cout << render_report_text(report, seed) << '\n'
              << "confusion matrix (gold rows x predicted columns):\n"
              << matrix_to_csv(report.matrix);
  }
}

void run_evaluate(const EvaluateOpts& opts) {
  const MnbModel model = load_model_file(opts.model_path);
  Corpus test;
  if (!opts.test_path.empty()) {
    test = read_corpus_file(opts.test_path);
  } else {
    test = read_corpus_file(opts.corpus_path);
    if (opts.split_fraction)
      test = train_test_split(test, *opts.split_fraction, opts.seed).second;
  }
  print_report(evaluate_model(model, test), opts.format, opts.seed);
}

struct CompareOpts {
  std::string corpus_path;
  std::string external_path;
  std::optional<double> split_fraction;
  std::uint64_t seed = 42;
  std::string format = "text";
};

void run_compare(const CompareOpts& opts) {
  Corpus test = read_corpus_file(opts.corpus_path);
  if (opts.split_fraction) test = train_test_split(test, *opts.split_fraction, opts.seed).second;
  const ExternalPredictions external = load_external_predictions_file(opts.external_path);
  print_report(compare_external(test, external), opts.format, opts.seed);
}

struct StatsOpts {
  std::string corpus_path;
  bool csv = false;
};

void run_stats(const StatsOpts& opts) {
  const Corpus corpus = read_corpus_file(opts.corpus_path);
  const LengthStats stats = length_stats(corpus);

  char line[192];
  if (opts.csv) {
    std::cout << "language,snippets,mean_lines,median_lines,mean_chars\n";
    for (const auto& [language, s] : stats.per_language) {
      std::snprintf(line, sizeof line, "%s,%lld,%.4f,%.1f,%.4f\n", language.c_str(),
                    static_cast<long long>(s.count), s.mean_lines, s.median_lines, s.mean_chars);
      std::cout << line;
    }
    return;
  }

  std::size_t width = 8;  // "language"
  for (const auto& [language, s] : stats.per_language) width = std::max(width, language.size());
  std::cout << std::string(width - 8, ' ') << "language  snippets  mean lines  median lines"
            << "  mean chars\n";
  for (const auto& [language, s] : stats.per_language) {
    std::cout << std::string(width - language.size(), ' ') << language;
    std::snprintf(line, sizeof line, "  %8lld  %10.2f  %12.1f  %10.1f\n",
                  static_cast<long long>(s.count), s.mean_lines, s.median_lines, s.mean_chars);
    std::cout << line;
  }
}

void add_pipeline_flags(CLI::App* cmd, PipelineConfig& config, std::string& features,
                        std::string& select_by) {
  cmd->add_option("--top-k", config.top_k, "terms kept per snippet vector")
      ->default_val(config.top_k)
      ->check(CLI::PositiveNumber);
  cmd->add_option("--features", features, "feature weighting")
      ->default_val("tfidf")
      ->check(CLI::IsMember({"counts", "tfidf"}));
  cmd->add_option("--select-by", select_by, "ranking key for top-k selection")
      ->default_val("tfidf")
      ->check(CLI::IsMember({"count", "tfidf"}));
  cmd->add_option("--min-df", config.min_df, "minimum document frequency for vocabulary terms")
      ->default_val(config.min_df)
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"identifies the programming language of code snippets"};
  app.require_subcommand(1);

  IngestOpts ingest;
  auto* ingest_cmd =
      app.add_subcommand("ingest", "extract labeled snippets from a posts dump into a corpus");
  ingest_cmd->add_option("--posts", ingest.posts_path, "Posts.xml dump")
      ->required()
      ->check(CLI::ExistingFile);
  ingest_cmd->add_option("--aliases", ingest.aliases_path, "tag alias config file")
      ->check(CLI::ExistingFile);
  ingest_cmd->add_option("--cap", ingest.cap, "max snippets kept per language")
      ->default_val(ingest.cap)
      ->check(CLI::PositiveNumber);
  ingest_cmd->add_option("--seed", ingest.seed, "sampling seed")->default_val(ingest.seed);
  ingest_cmd->add_option("--out", ingest.out_path, "corpus file to write")->required();

  TrainOpts train_opts;
  std::string train_features = "tfidf";
  std::string train_select_by = "tfidf";
  auto* train_cmd = app.add_subcommand("train", "grid-search alpha by cross validation and "
                                                "write a model");
  train_cmd->add_option("corpus", train_opts.corpus_path, "training corpus")
      ->required()
      ->check(CLI::ExistingFile);
  train_cmd->add_option("--out", train_opts.out_path, "model file to write")->required();
  train_cmd->add_option("--alpha-grid", train_opts.alpha_grid, "comma-separated smoothing grid")
      ->delimiter(',');
  train_cmd->add_option("--folds", train_opts.folds, "cross-validation folds")
      ->default_val(train_opts.folds)
      ->check(CLI::Range(2, 1000));
  train_cmd->add_option("--seed", train_opts.seed, "fold/split seed")
      ->default_val(train_opts.seed);
  train_cmd
      ->add_option("--split", train_opts.split_fraction,
                   "hold out this test fraction; train on the remainder")
      ->check(CLI::Range(0.0, 1.0));
  add_pipeline_flags(train_cmd, train_opts.config, train_features, train_select_by);

  PredictOpts predict_opts;
  auto* predict_cmd =
      app.add_subcommand("predict", "print the predicted language for one snippet");
  predict_cmd->add_option("model", predict_opts.model_path, "model file")
      ->required()
      ->check(CLI::ExistingFile);
  predict_cmd->add_option("input", predict_opts.input_path, "snippet file (default: stdin)")
      ->check(CLI::ExistingFile);

  EvaluateOpts evaluate_opts;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "score a model against gold labels");
  evaluate_cmd->add_option("model", evaluate_opts.model_path, "model file")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate_cmd->add_option("corpus", evaluate_opts.corpus_path, "gold-labeled corpus")
      ->required()
      ->check(CLI::ExistingFile);
  auto* evaluate_test = evaluate_cmd
                            ->add_option("--test", evaluate_opts.test_path,
                                         "pre-split test corpus (overrides the corpus argument)")
                            ->check(CLI::ExistingFile);
  evaluate_cmd
      ->add_option("--split", evaluate_opts.split_fraction,
                   "evaluate on this test fraction of the corpus")
      ->check(CLI::Range(0.0, 1.0))
      ->excludes(evaluate_test);
  evaluate_cmd->add_option("--seed", evaluate_opts.seed, "split seed")
      ->default_val(evaluate_opts.seed);
  evaluate_cmd->add_option("--format", evaluate_opts.format, "report format")
      ->default_val("text")
      ->check(CLI::IsMember({"text", "json"}));

  CompareOpts compare_opts;
  auto* compare_cmd =
      app.add_subcommand("compare", "score an external predictions file against gold labels");
  compare_cmd->add_option("corpus", compare_opts.corpus_path, "gold-labeled corpus")
      ->required()
      ->check(CLI::ExistingFile);
  compare_cmd
      ->add_option("external", compare_opts.external_path,
                   "JSON file of snippet id -> label or probability map")
      ->required()
      ->check(CLI::ExistingFile);
  compare_cmd
      ->add_option("--split", compare_opts.split_fraction,
                   "compare on this test fraction of the corpus")
      ->check(CLI::Range(0.0, 1.0));
  compare_cmd->add_option("--seed", compare_opts.seed, "split seed")
      ->default_val(compare_opts.seed);
  compare_cmd->add_option("--format", compare_opts.format, "report format")
      ->default_val("text")
      ->check(CLI::IsMember({"text", "json"}));

  StatsOpts stats_opts;
  auto* stats_cmd = app.add_subcommand("stats", "per-language snippet length statistics");
  stats_cmd->add_option("corpus", stats_opts.corpus_path, "corpus file")
      ->required()
      ->check(CLI::ExistingFile);
  stats_cmd->add_flag("--csv", stats_opts.csv, "emit CSV instead of a table");

  try {
    app.parse(argc, argv);
    if (ingest_cmd->parsed()) run_ingest(ingest);
    if (train_cmd->parsed()) {
      train_opts.config.feature_mode = feature_mode_from_name(train_features);
      train_opts.config.select_by = select_by_from_name(train_select_by);
      run_train(train_opts);
    }
    if (predict_cmd->parsed()) run_predict(predict_opts);
    if (evaluate_cmd->parsed()) run_evaluate(evaluate_opts);
    if (compare_cmd->parsed()) run_compare(compare_opts);
    if (stats_cmd->parsed()) run_stats(stats_opts);
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}

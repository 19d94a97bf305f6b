// Microbenchmarks over a synthetic multi-class corpus: tokenization,
// vectorization, training and single-snippet prediction.

#include <string>
#include <utility>
#include <vector>

#include <benchmark/benchmark.h>

#include "sniplang/mnb.hpp"
#include "sniplang/pipeline.hpp"
#include "sniplang/rng.hpp"

namespace {

using namespace sniplang;

// ~40 tokens per text drawn from a 400-term shared pool, 5 classes.
std::pair<std::vector<std::string>, std::vector<std::string>> synthetic_texts(std::size_t n) {
  std::vector<std::string> texts;
  std::vector<std::string> labels;
  SplitMix64 rng(7);
  for (std::size_t i = 0; i < n; ++i) {
    std::string text;
    for (int t = 0; t < 40; ++t) {
      text += "term" + std::to_string(rng.below(400));
      text += (t % 8 == 7) ? '\n' : ' ';
    }
    texts.push_back(std::move(text));
    labels.push_back("lang" + std::to_string(i % 5));
  }
  return {std::move(texts), std::move(labels)};
}

void BM_Tokenize(benchmark::State& state) {
  const auto [texts, labels] = synthetic_texts(64);
  const PipelineConfig config;
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tokenize(texts[i % texts.size()], config));
    ++i;
  }
}
BENCHMARK(BM_Tokenize);

void BM_VectorizeText(benchmark::State& state) {
  const auto [texts, labels] = synthetic_texts(64);
  const PipelineConfig config;
  const Vocabulary vocab = fit_vocabulary(texts, config);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(vectorize_text(texts[i % texts.size()], vocab, config));
    ++i;
  }
}
BENCHMARK(BM_VectorizeText);

void BM_Train(benchmark::State& state) {
  const auto [texts, labels] = synthetic_texts(static_cast<std::size_t>(state.range(0)));
  const PipelineConfig config;
  const Vocabulary vocab = fit_vocabulary(texts, config);
  std::vector<std::pair<SparseVector, std::string>> vectors;
  for (std::size_t i = 0; i < texts.size(); ++i)
    vectors.emplace_back(vectorize_text(texts[i], vocab, config), labels[i]);
  for (auto _ : state) benchmark::DoNotOptimize(train(vectors, 0.1, vocab, config));
}
BENCHMARK(BM_Train)->Arg(100)->Arg(1000);

void BM_Predict(benchmark::State& state) {
  const auto [texts, labels] = synthetic_texts(256);
  const PipelineConfig config;
  const Vocabulary vocab = fit_vocabulary(texts, config);
  std::vector<std::pair<SparseVector, std::string>> vectors;
  for (std::size_t i = 0; i < texts.size(); ++i)
    vectors.emplace_back(vectorize_text(texts[i], vocab, config), labels[i]);
  const MnbModel model = train(vectors, 0.1, vocab, config);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(predict(model, vectors[i % vectors.size()].first));
    ++i;
  }
}
BENCHMARK(BM_Predict);

}  // namespace

BENCHMARK_MAIN();

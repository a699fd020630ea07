// Copyright 2026 The Tempsum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>

#include <benchmark/benchmark.h>

#include "tempsum/ingest/series.hpp"
#include "tempsum/ingest/synth.hpp"
#include "tempsum/protoform/generate.hpp"
#include "tempsum/train/bleu.hpp"

using namespace tempsum;

namespace {

std::vector<train::Sentence> random_corpus(std::size_t n, std::uint64_t seed) {
  static const char* words[] = {"In", "the", "past", "week", ",", "your", "calorie", "intake", "was", "high", "low", "."};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len(6, 18), w(0, 11);
  std::vector<train::Sentence> out(n);
  for (auto& s : out) {
    s.resize(static_cast<std::size_t>(len(rng)));
    for (auto& t : s) t = words[w(rng)];
  }
  return out;
}

void BM_CorpusBleu(benchmark::State& state) {
  const auto c = random_corpus(static_cast<std::size_t>(state.range(0)), 1);
  const auto r = random_corpus(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(train::bleu_score(c, r));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CorpusBleu)->Arg(100)->Arg(1000);

void BM_GenerateSummary(benchmark::State& state) {
  ingest::SynthConfig cfg;
  cfg.n_users = 1;
  const auto series = ingest::build_series(ingest::synth_generate(cfg), ingest::Attribute::calorie_intake).series;
  const protoform::SeriesContext ctx(series.front());
  const auto type = protoform::kAllSummaryTypes[static_cast<std::size_t>(state.range(0))];
  for (auto _ : state) benchmark::DoNotOptimize(protoform::generate_summary(type, ctx, series.front().size() - 1));
  state.SetLabel(std::string(protoform::to_string(type)));
}
BENCHMARK(BM_GenerateSummary)->DenseRange(0, 12);

}  // namespace

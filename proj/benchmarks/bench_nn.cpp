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

#include "tempsum/nn/attention.hpp"
#include "tempsum/nn/model.hpp"
#include "tempsum/text/vocab.hpp"

using namespace tempsum;

namespace {

nn::Matrix random_matrix(nn::Index rows, nn::Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  nn::Matrix m(rows, cols);
  for (nn::Index i = 0; i < m.size(); ++i) m.data()[i] = n(rng);
  return m;
}

void BM_WindowedAttention(benchmark::State& state) {
  const nn::Index len = state.range(0);
  const nn::Index window = state.range(1);
  const auto q = random_matrix(len, 8, 1);
  const auto k = random_matrix(len, 8, 2);
  for (auto _ : state) benchmark::DoNotOptimize(nn::attention_probabilities(q, k, window, false));
}
BENCHMARK(BM_WindowedAttention)->Args({128, 12})->Args({128, 0})->Args({512, 12});

nn::Model make_model(nn::Family family) {
  std::vector<std::vector<std::string>> corpus = {{"In", "the", "past", "week", ",", "your", "calorie", "intake", "was",
                                                   "high", "."}};
  const auto sv = text::Vocab::build(corpus);
  const auto tv = text::Vocab::template_vocab(sv);
  nn::ModelConfig cfg;
  cfg.family = family;
  cfg.short_len = 7;
  cfg.long_len = 120;
  cfg.max_decode_len = 16;
  cfg.summary_vocab = sv.size();
  cfg.template_vocab = tv.size();
  return nn::Model(cfg, sv, tv);
}

void BM_GreedyGenerate(benchmark::State& state) {
  const auto family = static_cast<nn::Family>(state.range(0));
  const auto model = make_model(family);
  const auto xs = random_matrix(state.range(1), 7, 3);
  const auto xl = random_matrix(state.range(1), 120, 4);
  for (auto _ : state) benchmark::DoNotOptimize(model.greedy_generate(xs, xl));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_GreedyGenerate)
    ->Args({static_cast<int>(nn::Family::cnn_lstm), 32})
    ->Args({static_cast<int>(nn::Family::tst_lstm), 32})
    ->Args({static_cast<int>(nn::Family::tst_transformer), 32})
    ->Unit(benchmark::kMillisecond);

void BM_TrainStep(benchmark::State& state) {
  const auto family = static_cast<nn::Family>(state.range(0));
  auto model = make_model(family);
  std::vector<nn::Example> examples(static_cast<std::size_t>(state.range(1)));
  for (auto& e : examples) {
    e.x_short.assign(7, 0.5);
    e.x_long.assign(120, -0.25);
    e.summary = {text::kBosId, 4, 5, 6, text::kEosId};
    e.template_ids = {text::kBosId, 4, 5, 6, text::kEosId};
  }
  std::vector<const nn::Example*> ptrs;
  for (const auto& e : examples) ptrs.push_back(&e);
  const auto batch = model.make_batch(ptrs);
  for (auto _ : state) {
    nn::Tape tape;
    auto r = model.loss(tape, batch, nullptr);
    tape.backward(r.loss);
    model.parameters().zero_grad();
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_TrainStep)
    ->Args({static_cast<int>(nn::Family::cnn_lstm), 16})
    ->Args({static_cast<int>(nn::Family::tst_lstm), 16})
    ->Args({static_cast<int>(nn::Family::tst_transformer), 16})
    ->Unit(benchmark::kMillisecond);

}  // namespace

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

#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "tempsum/nn/model.hpp"
#include "tempsum/nn/tape.hpp"
#include "tempsum/text/codec.hpp"
#include "tempsum/text/slots.hpp"
#include "tempsum/text/vocab.hpp"

namespace tempsum::testing {

struct TinyTask {
  text::Vocab summary_vocab;
  text::Vocab template_vocab;
  std::vector<nn::Example> examples;
};

/// Four two-word sentences: an A word then an S word.
inline TinyTask tiny_task() {
  const std::vector<std::vector<std::string>> sentences = {
      {"intake", "high"}, {"intake", "low"}, {"intake", "moderate"}, {"intake", "high"}};
  TinyTask task;
  task.summary_vocab = text::Vocab::build(sentences);
  task.template_vocab = text::Vocab::template_vocab(task.summary_vocab);
  const std::string a{text::placeholder(text::SlotKind::A)};
  const std::string s{text::placeholder(text::SlotKind::S)};
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    nn::Example e;
    for (int t = 0; t < 5; ++t) e.x_short.push_back(std::sin(0.7 * static_cast<double>(i * 5 + t)));
    for (int t = 0; t < 8; ++t) e.x_long.push_back(std::cos(0.3 * static_cast<double>(i * 8 + t)));
    e.summary = text::encode(sentences[i], task.summary_vocab).ids;
    e.template_ids = text::encode(std::vector<std::string>{a, s}, task.template_vocab).ids;
    task.examples.push_back(std::move(e));
  }
  return task;
}

struct GradCheckResult {
  double max_relative_error = 0.0;
  int probes = 0;
};

/// Compares tape gradients with central differences at `probes` random scalar
/// parameters. The decode plan of the first pass is replayed so the loss is a
/// smooth function of the weights.
inline GradCheckResult gradient_check(nn::Model& model, const nn::Batch& batch, int probes, std::uint64_t seed,
                                      double h = 1e-6) {
  auto& params = model.parameters();
  params.zero_grad();
  nn::DecodePlan plan;
  {
    nn::Tape tape;
    auto result = model.loss(tape, batch, nullptr);
    plan = result.plan;
    tape.backward(result.loss);
  }
  const auto evaluate = [&] {
    nn::Tape tape(false);
    return model.loss(tape, batch, nullptr, &plan).loss.value()(0, 0);
  };

  std::mt19937_64 rng(seed);
  std::vector<nn::Parameter*> all = params.all();
  std::vector<double> weights;
  for (auto* p : all) weights.push_back(static_cast<double>(p->value.size()));
  std::discrete_distribution<std::size_t> pick_param(weights.begin(), weights.end());

  GradCheckResult out;
  for (int k = 0; k < probes; ++k) {
    nn::Parameter& p = *all[pick_param(rng)];
    std::uniform_int_distribution<Eigen::Index> pick(0, p.value.size() - 1);
    const Eigen::Index i = pick(rng);
    double& w = p.value.data()[i];
    const double saved = w;
    w = saved + h;
    const double up = evaluate();
    w = saved - h;
    const double down = evaluate();
    w = saved;
    const double numeric = (up - down) / (2.0 * h);
    const double analytic = p.grad.data()[i];
    const double denom = std::max({std::abs(numeric), std::abs(analytic), 1e-6});
    out.max_relative_error = std::max(out.max_relative_error, std::abs(numeric - analytic) / denom);
    ++out.probes;
  }
  return out;
}

}  // namespace tempsum::testing

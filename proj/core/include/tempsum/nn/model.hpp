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

#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "tempsum/nn/decoders.hpp"
#include "tempsum/nn/encoders.hpp"
#include "tempsum/nn/model_config.hpp"
#include "tempsum/text/vocab.hpp"

namespace tempsum::nn {

/// Network-ready example: normalized inputs and full gold id sequences
/// (<s> ... </s>).
struct Example {
  std::vector<double> x_short;
  std::vector<double> x_long;
  std::vector<int> summary;
  std::vector<int> template_ids;
};

struct Batch {
  Matrix x_short;  // batch x short_len
  Matrix x_long;   // batch x long_len
  /// Gold ids after <s>, ending with </s>.
  std::vector<std::vector<int>> summary_targets;
  std::vector<std::vector<int>> template_targets;

  Index size() const { return x_short.rows(); }
};

/// Decoder inputs and blank counts of one forward pass, reusable to replay it.
struct DecodePlan {
  StepInputs inputs;
  std::vector<double> m;
};

struct LossResult {
  Var loss;
  DecodePlan plan;
  double summary_ce = 0.0;
  double template_ce = 0.0;
};

struct Generation {
  std::vector<int> summary_ids;   // content ids, cut before </s>
  std::vector<int> template_ids;  // content ids, cut before </s>
  std::vector<std::string> summary;
  std::vector<std::string> template_tokens;
};

/// Summary-vocab id -> template-vocab id: lexicon-only words map to their
/// placeholder, everything else to the same word.
std::vector<int> build_template_lookup(const text::Vocab& summary_vocab, const text::Vocab& template_vocab);

/// x_long left-padded with zeros or cut to its last `length` values.
std::vector<double> fit_long(std::span<const double> x_long, int length);

class Model {
 public:
  Model(ModelConfig config, text::Vocab summary_vocab, text::Vocab template_vocab);
  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;
  Model(Model&&) = default;

  const ModelConfig& config() const noexcept { return config_; }
  ParameterSet& parameters() noexcept { return params_; }
  const ParameterSet& parameters() const noexcept { return params_; }
  const text::Vocab& summary_vocab() const noexcept { return summary_vocab_; }
  const text::Vocab& template_vocab() const noexcept { return template_vocab_; }
  const std::vector<int>& template_lookup() const noexcept { return lookup_; }

  Batch make_batch(std::span<const Example* const> examples) const;

  /// Mean over the batch of summary CE plus m times template CE. Dropout runs
  /// when `dropout_rng` is set. With `plan`, decoder inputs and m are replayed
  /// instead of derived from the current predictions.
  LossResult loss(Tape& tape, const Batch& batch, std::mt19937_64* dropout_rng, const DecodePlan* plan = nullptr);

  /// Greedy decoding of both streams for up to max_decode_len steps.
  std::vector<Generation> greedy_generate(const Matrix& x_short, const Matrix& x_long) const;
  Generation greedy_generate(std::span<const double> x_short, std::span<const double> x_long) const;

 private:
  EncoderOutput encode(const RunContext& ctx, const Matrix& x_short, const Matrix& x_long) const;

  ModelConfig config_;
  text::Vocab summary_vocab_;
  text::Vocab template_vocab_;
  std::vector<int> lookup_;
  ParameterSet params_;
  std::unique_ptr<CnnEncoder> cnn_;
  std::unique_ptr<TstEncoder> tst_;
  std::unique_ptr<LstmDualDecoder> lstm_;
  std::unique_ptr<TransformerDualDecoder> transformer_;
};

}  // namespace tempsum::nn

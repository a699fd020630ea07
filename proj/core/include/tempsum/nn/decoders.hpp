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

#include <vector>

#include "tempsum/nn/encoders.hpp"

namespace tempsum::nn {

/// Logits of both streams with rows ordered b * steps + t.
struct DualLogits {
  Var summary;
  Var template_logits;
  Index batch = 0;
  Index steps = 0;
};

/// Per-example input ids, inputs[b][t]; position 0 is always <s>.
using StepInputs = std::vector<std::vector<int>>;

/// Summary and template LSTM decoders initialized from the pooled context,
/// which is also fed to every step. The summary decoder reads its own previous
/// prediction; the template decoder reads `lookup` of that prediction.
class LstmDualDecoder {
 public:
  LstmDualDecoder() = default;
  LstmDualDecoder(ParameterSet& params, const ModelConfig& config, Initializer& init);

  /// Runs `steps` steps. With `forced`, the summary inputs come from it instead
  /// of the running argmax. The inputs used are written to `used` if given.
  DualLogits operator()(const RunContext& ctx, const EncoderOutput& enc, Index steps, const std::vector<int>& lookup,
                        const StepInputs* forced, StepInputs* used) const;

 private:
  struct Stream {
    Parameter* embedding = nullptr;
    Linear input, context, init, output;
  };
  Stream make_stream(ParameterSet& params, const std::string& name, Index vocab, Initializer& init);

  ModelConfig config_;
  Stream summary_, template_;
};

/// Summary and template Transformer decoders over the encoder positions.
class TransformerDualDecoder {
 public:
  TransformerDualDecoder() = default;
  TransformerDualDecoder(ParameterSet& params, const ModelConfig& config, Initializer& init);

  /// One causal pass over fixed inputs.
  DualLogits operator()(const RunContext& ctx, const EncoderOutput& enc, const StepInputs& inputs,
                        const std::vector<int>& lookup) const;
  /// Greedy summary inputs for `steps` steps, computed without gradients and
  /// without dropout from the encoder values.
  StepInputs greedy_inputs(const Matrix& memory, Index batch, Index memory_len, Index steps) const;

 private:
  struct Stream {
    Parameter* embedding = nullptr;
    std::vector<DecoderLayer> layers;
    Linear output;
  };
  Stream make_stream(ParameterSet& params, const std::string& name, Index vocab, Initializer& init);
  Var run_stream(const RunContext& ctx, const Stream& s, Var memory, Index batch, Index memory_len,
                 const std::vector<int>& flat_ids, Index steps) const;

  ModelConfig config_;
  Stream summary_, template_;
  Matrix positions_;
};

}  // namespace tempsum::nn

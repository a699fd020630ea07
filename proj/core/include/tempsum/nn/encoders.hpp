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

#include "tempsum/nn/layers.hpp"
#include "tempsum/nn/model_config.hpp"

namespace tempsum::nn {

struct EncoderOutput {
  /// (batch * positions) x width.
  Var context;
  Index positions = 0;
  /// batch x encoder_output; unset for the Transformer decoder family.
  Var pooled;
};

/// x_short and x_long as batch x short_len and batch x long_len rows.
class CnnEncoder {
 public:
  CnnEncoder() = default;
  CnnEncoder(ParameterSet& params, const ModelConfig& config, Initializer& init);
  EncoderOutput operator()(const RunContext& ctx, const Matrix& x_short, const Matrix& x_long) const;

 private:
  struct Stack {
    Linear conv1, conv2;
  };
  Var run_stack(const RunContext& ctx, const Stack& stack, const Matrix& x) const;

  ModelConfig config_;
  Stack short_, long_;
  Linear dense_;
};

/// Input [x_short, separator, x_long] as one scalar sequence.
class TstEncoder {
 public:
  TstEncoder() = default;
  TstEncoder(ParameterSet& params, const ModelConfig& config, bool pooled, Initializer& init);
  EncoderOutput operator()(const RunContext& ctx, const Matrix& x_short, const Matrix& x_long) const;

  Index sequence_length() const { return config_.short_len + 1 + config_.long_len; }

 private:
  ModelConfig config_;
  Parameter* separator_ = nullptr;
  Linear input_;
  std::vector<EncoderLayer> layers_;
  Matrix positions_;
  bool pooled_ = false;
  Linear dense_;
};

}  // namespace tempsum::nn

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

#include <cstdint>
#include <string>
#include <string_view>

namespace tempsum::nn {

enum class Family { cnn_lstm, tst_transformer, tst_lstm };

std::string_view to_string(Family family);
Family family_from_string(std::string_view name);

struct ModelConfig {
  Family family = Family::cnn_lstm;

  // LSTM decoders and the pooled encoder output.
  int hidden_size = 180;
  int encoder_output = 256;
  int embedding_dim = 64;

  // CNN encoder: two conv + ReLU + max-pool stacks per input.
  int conv_channels = 32;
  int conv_kernel = 3;
  int conv_padding = 1;
  int pool_kernel = 2;
  int pool_stride = 2;

  // TST encoder and Transformer decoders.
  int d_model = 64;
  int qkv_dim = 8;
  int heads = 4;
  int layers = 4;
  int ffn_dim = 128;
  int window = 12;
  bool positional_encoding = true;

  double dropout = 0.2;

  // Input and output shapes.
  int short_len = 7;
  int long_len = 120;
  int max_decode_len = 32;
  int summary_vocab = 0;
  int template_vocab = 0;

  std::uint64_t seed = 7;

  /// Throws ConfigError naming the first bad field.
  void validate() const;
  /// Positions left after both conv + pool stacks; 0 when too short.
  int cnn_output_length(int length) const;
  /// Shortest sequence the CNN pooling chain accepts.
  int min_cnn_length() const;

  std::string to_json() const;
  static ModelConfig from_json(std::string_view text);

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

/// Small dimensions for gradient checks: d_model 8, one layer, short sequences.
ModelConfig miniature_config(Family family, int summary_vocab, int template_vocab);

}  // namespace tempsum::nn

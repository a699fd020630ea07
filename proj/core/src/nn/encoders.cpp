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

#include "tempsum/nn/encoders.hpp"

#include "tempsum/error.hpp"
#include "tempsum/nn/ops.hpp"

namespace tempsum::nn {

CnnEncoder::CnnEncoder(ParameterSet& params, const ModelConfig& config, Initializer& init) : config_(config) {
  const Index k = config.conv_kernel;
  const Index c = config.conv_channels;
  short_.conv1 = Linear(params, "cnn.short.conv1", k, c, init);
  short_.conv2 = Linear(params, "cnn.short.conv2", k * c, c, init);
  long_.conv1 = Linear(params, "cnn.long.conv1", k, c, init);
  long_.conv2 = Linear(params, "cnn.long.conv2", k * c, c, init);
  const Index features = (config.cnn_output_length(config.short_len) + config.cnn_output_length(config.long_len)) * c +
                         config.short_len + config.long_len;
  dense_ = Linear(params, "cnn.dense", features, config.encoder_output, init);
}

Var CnnEncoder::run_stack(const RunContext& ctx, const Stack& stack, const Matrix& x) const {
  Tape& t = *ctx.tape;
  const Index batch = x.rows();
  Index len = x.cols();
  if (len < config_.min_cnn_length()) {
    throw ShapeError("cnn input of length " + std::to_string(len) + " is below the minimum " +
                     std::to_string(config_.min_cnn_length()));
  }
  Var h = t.constant(Eigen::Map<const Matrix>(x.data(), batch * len, 1));
  for (const Linear* conv : {&stack.conv1, &stack.conv2}) {
    h = relu((*conv)(t, im2col(h, batch, len, config_.conv_kernel, config_.conv_padding)));
    len = len + 2 * config_.conv_padding - config_.conv_kernel + 1;
    h = max_pool(h, batch, len, config_.pool_kernel, config_.pool_stride);
    len = (len - config_.pool_kernel) / config_.pool_stride + 1;
  }
  return reshape(h, batch, len * h.cols());
}

EncoderOutput CnnEncoder::operator()(const RunContext& ctx, const Matrix& x_short, const Matrix& x_long) const {
  Tape& t = *ctx.tape;
  if (x_short.rows() != x_long.rows()) throw ShapeError("cnn: x_short and x_long batch sizes differ");
  const Var s = run_stack(ctx, short_, x_short);
  const Var l = run_stack(ctx, long_, x_long);
  const Var features = concat_cols({s, l, t.constant(x_short), t.constant(x_long)});
  EncoderOutput out;
  out.pooled = ctx.drop(tanh(dense_(t, features)));
  out.context = out.pooled;
  out.positions = 1;
  return out;
}

TstEncoder::TstEncoder(ParameterSet& params, const ModelConfig& config, bool pooled, Initializer& init)
    : config_(config), pooled_(pooled) {
  separator_ = &params.add("tst.separator", 1, 1);
  init.uniform(*separator_, 1.0);
  input_ = Linear(params, "tst.input", 1, config.d_model, init);
  for (int i = 0; i < config.layers; ++i) {
    layers_.emplace_back(params, "tst.layer" + std::to_string(i), config.d_model, config.heads, config.qkv_dim,
                         config.ffn_dim, init);
  }
  positions_ = config.positional_encoding ? sinusoidal_encoding(sequence_length(), config.d_model)
                                          : Matrix::Zero(sequence_length(), config.d_model);
  if (pooled_) dense_ = Linear(params, "tst.dense", sequence_length() * config.d_model, config.encoder_output, init);
}

EncoderOutput TstEncoder::operator()(const RunContext& ctx, const Matrix& x_short, const Matrix& x_long) const {
  Tape& t = *ctx.tape;
  const Index batch = x_short.rows();
  if (x_short.cols() != config_.short_len || x_long.cols() != config_.long_len || x_long.rows() != batch) {
    throw ShapeError("tst: inputs must be batch x " + std::to_string(config_.short_len) + " and batch x " +
                     std::to_string(config_.long_len));
  }
  const Index len = sequence_length();
  const Var sep = broadcast_rows(t.param(*separator_), batch);
  const Var seq = concat_cols({t.constant(x_short), sep, t.constant(x_long)});
  Var h = input_(t, reshape(seq, batch * len, 1));
  h = add(h, t.constant(positions_.replicate(batch, 1)));
  h = ctx.drop(h);
  for (const auto& layer : layers_) h = layer(ctx, h, batch, len, config_.window);
  EncoderOutput out;
  out.context = h;
  out.positions = len;
  if (pooled_) out.pooled = ctx.drop(tanh(dense_(t, reshape(h, batch, len * config_.d_model))));
  return out;
}

}  // namespace tempsum::nn

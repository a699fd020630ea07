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

#include "tempsum/nn/layers.hpp"

#include <cmath>

#include "tempsum/nn/ops.hpp"

namespace tempsum::nn {

void Initializer::uniform(Parameter& p, double bound) {
  std::uniform_real_distribution<double> d(-bound, bound);
  for (Index i = 0; i < p.value.size(); ++i) p.value.data()[i] = d(rng_);
}

void Initializer::fan_in(Parameter& p, Index fan_in) { uniform(p, 1.0 / std::sqrt(static_cast<double>(fan_in))); }

void Initializer::constant(Parameter& p, double value) { p.value.setConstant(value); }

Var RunContext::drop(Var x) const { return nn::dropout(x, dropout, rng); }

Linear::Linear(ParameterSet& params, const std::string& name, Index in, Index out, Initializer& init)
    : weight(&params.add(name + ".weight", in, out)), bias(&params.add(name + ".bias", 1, out)) {
  init.fan_in(*weight, in);
}

Var Linear::operator()(Tape& tape, Var x) const {
  return add_row(matmul(x, tape.param(*weight)), tape.param(*bias));
}

LayerNorm::LayerNorm(ParameterSet& params, const std::string& name, Index width, Initializer& init)
    : gain(&params.add(name + ".gain", 1, width)), bias(&params.add(name + ".bias", 1, width)) {
  init.constant(*gain, 1.0);
}

Var LayerNorm::operator()(Tape& tape, Var x) const { return layer_norm(x, tape.param(*gain), tape.param(*bias)); }

MultiHeadAttention::MultiHeadAttention(ParameterSet& params, const std::string& name, Index width, Index heads,
                                       Index head_dim, Initializer& init)
    : q_(params, name + ".q", width, heads * head_dim, init),
      k_(params, name + ".k", width, heads * head_dim, init),
      v_(params, name + ".v", width, heads * head_dim, init),
      o_(params, name + ".o", heads * head_dim, width, init),
      heads_(heads),
      head_dim_(head_dim) {}

Var MultiHeadAttention::operator()(Tape& tape, Var x_q, Var x_kv, Index batch, Index query_len, Index key_len,
                                   Index window, bool causal) const {
  AttentionSpec spec;
  spec.batch = batch;
  spec.query_len = query_len;
  spec.key_len = key_len;
  spec.heads = heads_;
  spec.head_dim = head_dim_;
  spec.window = window;
  spec.causal = causal;
  const Var a = multihead_attention(q_(tape, x_q), k_(tape, x_kv), v_(tape, x_kv), spec);
  return o_(tape, a);
}

EncoderLayer::EncoderLayer(ParameterSet& params, const std::string& name, Index width, Index heads, Index head_dim,
                           Index ffn, Initializer& init)
    : attn_(params, name + ".attn", width, heads, head_dim, init),
      norm1_(params, name + ".norm1", width, init),
      norm2_(params, name + ".norm2", width, init),
      ff1_(params, name + ".ff1", width, ffn, init),
      ff2_(params, name + ".ff2", ffn, width, init) {}

Var EncoderLayer::operator()(const RunContext& ctx, Var x, Index batch, Index length, Index window) const {
  Tape& t = *ctx.tape;
  const Var a = ctx.drop(attn_(t, x, x, batch, length, length, window, false));
  x = norm1_(t, add(x, a));
  const Var f = ctx.drop(ff2_(t, relu(ff1_(t, x))));
  return norm2_(t, add(x, f));
}

DecoderLayer::DecoderLayer(ParameterSet& params, const std::string& name, Index width, Index heads, Index head_dim,
                           Index ffn, Initializer& init)
    : self_(params, name + ".self", width, heads, head_dim, init),
      cross_(params, name + ".cross", width, heads, head_dim, init),
      norm1_(params, name + ".norm1", width, init),
      norm2_(params, name + ".norm2", width, init),
      norm3_(params, name + ".norm3", width, init),
      ff1_(params, name + ".ff1", width, ffn, init),
      ff2_(params, name + ".ff2", ffn, width, init) {}

Var DecoderLayer::operator()(const RunContext& ctx, Var x, Var memory, Index batch, Index length,
                             Index memory_len) const {
  Tape& t = *ctx.tape;
  x = norm1_(t, add(x, ctx.drop(self_(t, x, x, batch, length, length, 0, true))));
  x = norm2_(t, add(x, ctx.drop(cross_(t, x, memory, batch, length, memory_len, 0, false))));
  const Var f = ctx.drop(ff2_(t, relu(ff1_(t, x))));
  return norm3_(t, add(x, f));
}

Matrix sinusoidal_encoding(Index length, Index width) {
  Matrix pe(length, width);
  for (Index pos = 0; pos < length; ++pos) {
    for (Index i = 0; i < width; ++i) {
      const double rate = std::pow(10000.0, -static_cast<double>(2 * (i / 2)) / static_cast<double>(width));
      pe(pos, i) = (i % 2 == 0) ? std::sin(static_cast<double>(pos) * rate) : std::cos(static_cast<double>(pos) * rate);
    }
  }
  return pe;
}

}  // namespace tempsum::nn

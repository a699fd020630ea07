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

#include <random>
#include <string>

#include "tempsum/nn/attention.hpp"
#include "tempsum/nn/tape.hpp"

namespace tempsum::nn {

/// Seeded parameter initialization.
class Initializer {
 public:
  explicit Initializer(std::uint64_t seed) : rng_(seed) {}
  void uniform(Parameter& p, double bound);
  /// Uniform in +-1/sqrt(fan_in).
  void fan_in(Parameter& p, Index fan_in);
  void constant(Parameter& p, double value);

 private:
  std::mt19937_64 rng_;
};

/// Per-forward settings: dropout is active only with an rng.
struct RunContext {
  Tape* tape = nullptr;
  std::mt19937_64* rng = nullptr;
  double dropout = 0.0;

  Var drop(Var x) const;
};

class Linear {
 public:
  Linear() = default;
  Linear(ParameterSet& params, const std::string& name, Index in, Index out, Initializer& init);
  Var operator()(Tape& tape, Var x) const;

  Parameter* weight = nullptr;  // in x out
  Parameter* bias = nullptr;    // 1 x out
};

class LayerNorm {
 public:
  LayerNorm() = default;
  LayerNorm(ParameterSet& params, const std::string& name, Index width, Initializer& init);
  Var operator()(Tape& tape, Var x) const;

  Parameter* gain = nullptr;
  Parameter* bias = nullptr;
};

class MultiHeadAttention {
 public:
  MultiHeadAttention() = default;
  MultiHeadAttention(ParameterSet& params, const std::string& name, Index width, Index heads, Index head_dim,
                     Initializer& init);
  /// x_q is (batch * query_len) x width, x_kv is (batch * key_len) x width.
  Var operator()(Tape& tape, Var x_q, Var x_kv, Index batch, Index query_len, Index key_len, Index window,
                 bool causal) const;

 private:
  Linear q_, k_, v_, o_;
  Index heads_ = 1;
  Index head_dim_ = 1;
};

/// Post-norm encoder layer with windowed self-attention.
class EncoderLayer {
 public:
  EncoderLayer() = default;
  EncoderLayer(ParameterSet& params, const std::string& name, Index width, Index heads, Index head_dim, Index ffn,
               Initializer& init);
  Var operator()(const RunContext& ctx, Var x, Index batch, Index length, Index window) const;

 private:
  MultiHeadAttention attn_;
  LayerNorm norm1_, norm2_;
  Linear ff1_, ff2_;
};

/// Post-norm decoder layer: causal self-attention, cross-attention, feed-forward.
class DecoderLayer {
 public:
  DecoderLayer() = default;
  DecoderLayer(ParameterSet& params, const std::string& name, Index width, Index heads, Index head_dim, Index ffn,
               Initializer& init);
  Var operator()(const RunContext& ctx, Var x, Var memory, Index batch, Index length, Index memory_len) const;

 private:
  MultiHeadAttention self_, cross_;
  LayerNorm norm1_, norm2_, norm3_;
  Linear ff1_, ff2_;
};

/// Fixed sinusoidal position table, length x width.
Matrix sinusoidal_encoding(Index length, Index width);

}  // namespace tempsum::nn

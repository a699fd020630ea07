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

#include "tempsum/nn/decoders.hpp"

#include <cmath>

#include "tempsum/error.hpp"
#include "tempsum/nn/ops.hpp"
#include "tempsum/text/vocab.hpp"

namespace tempsum::nn {

namespace {

// Rows t * batch + b  ->  rows b * steps + t.
std::vector<int> step_major_to_batch_major(Index batch, Index steps) {
  std::vector<int> order(static_cast<std::size_t>(batch * steps));
  for (Index b = 0; b < batch; ++b) {
    for (Index t = 0; t < steps; ++t) order[static_cast<std::size_t>(b * steps + t)] = static_cast<int>(t * batch + b);
  }
  return order;
}

int mapped(const std::vector<int>& lookup, int id) {
  if (id < 0 || static_cast<std::size_t>(id) >= lookup.size()) {
    throw ConsistencyError("no template mapping for summary id " + std::to_string(id));
  }
  return lookup[static_cast<std::size_t>(id)];
}

}  // namespace

LstmDualDecoder::Stream LstmDualDecoder::make_stream(ParameterSet& params, const std::string& name, Index vocab,
                                                     Initializer& init) {
  const Index H = config_.hidden_size;
  const Index E = config_.embedding_dim;
  const Index C = config_.encoder_output;
  Stream s;
  s.embedding = &params.add(name + ".embedding", vocab, E);
  init.uniform(*s.embedding, 0.1);
  s.input = Linear(params, name + ".input", E + H, 4 * H, init);
  s.context = Linear(params, name + ".context", C, 4 * H, init);
  s.init = Linear(params, name + ".init", C, H, init);
  s.output = Linear(params, name + ".output", H, vocab, init);
  return s;
}

LstmDualDecoder::LstmDualDecoder(ParameterSet& params, const ModelConfig& config, Initializer& init)
    : config_(config) {
  summary_ = make_stream(params, "lstm.summary", config.summary_vocab, init);
  template_ = make_stream(params, "lstm.template", config.template_vocab, init);
}

DualLogits LstmDualDecoder::operator()(const RunContext& ctx, const EncoderOutput& enc, Index steps,
                                       const std::vector<int>& lookup, const StepInputs* forced,
                                       StepInputs* used) const {
  Tape& t = *ctx.tape;
  const Index B = enc.pooled.rows();
  const Index H = config_.hidden_size;
  if (forced && static_cast<Index>(forced->size()) != B) throw ShapeError("lstm: forced inputs batch differs");

  struct State {
    const Stream* s;
    Var emb, w_in, b_in;
    Var ctx_gates;
    Var h, c;
    std::vector<Var> logits;
  };
  auto start = [&](const Stream& s) {
    State st{&s, t.param(*s.embedding), t.param(*s.input.weight), t.param(*s.input.bias), {}, {}, {}, {}};
    st.ctx_gates = add_row(s.context(t, enc.pooled), st.b_in);
    st.h = tanh(s.init(t, enc.pooled));
    st.c = t.constant(Matrix::Zero(B, H));
    return st;
  };
  State sum = start(summary_);
  State tpl = start(template_);
  const Var w_out_s = t.param(*summary_.output.weight), b_out_s = t.param(*summary_.output.bias);
  const Var w_out_t = t.param(*template_.output.weight), b_out_t = t.param(*template_.output.bias);

  auto step = [&](State& st, const std::vector<int>& ids, Var w_out, Var b_out) {
    const Var x = gather_rows(st.emb, ids);
    const Var z = add(matmul(concat_cols({x, st.h}), st.w_in), st.ctx_gates);
    const Var i = sigmoid(slice_cols(z, 0, H));
    const Var f = sigmoid(slice_cols(z, H, H));
    const Var g = tanh(slice_cols(z, 2 * H, H));
    const Var o = sigmoid(slice_cols(z, 3 * H, H));
    st.c = add(mul(f, st.c), mul(i, g));
    st.h = mul(o, tanh(st.c));
    st.logits.push_back(add_row(matmul(st.h, w_out), b_out));
  };

  std::vector<int> ids(static_cast<std::size_t>(B), text::kBosId);
  std::vector<int> tids(static_cast<std::size_t>(B));
  if (used) used->assign(static_cast<std::size_t>(B), {});
  for (Index s = 0; s < steps; ++s) {
    if (s > 0) {
      if (forced) {
        for (Index b = 0; b < B; ++b) ids[static_cast<std::size_t>(b)] = (*forced)[static_cast<std::size_t>(b)].at(static_cast<std::size_t>(s));
      } else {
        ids = argmax_rows(sum.logits.back().value());
      }
    }
    for (Index b = 0; b < B; ++b) {
      tids[static_cast<std::size_t>(b)] = mapped(lookup, ids[static_cast<std::size_t>(b)]);
      if (used) (*used)[static_cast<std::size_t>(b)].push_back(ids[static_cast<std::size_t>(b)]);
    }
    step(sum, ids, w_out_s, b_out_s);
    step(tpl, tids, w_out_t, b_out_t);
  }
  const auto order = step_major_to_batch_major(B, steps);
  DualLogits out;
  out.summary = gather_rows(concat_rows(sum.logits), order);
  out.template_logits = gather_rows(concat_rows(tpl.logits), order);
  out.batch = B;
  out.steps = steps;
  return out;
}

TransformerDualDecoder::Stream TransformerDualDecoder::make_stream(ParameterSet& params, const std::string& name,
                                                                   Index vocab, Initializer& init) {
  Stream s;
  s.embedding = &params.add(name + ".embedding", vocab, config_.d_model);
  init.uniform(*s.embedding, 0.1);
  for (int i = 0; i < config_.layers; ++i) {
    s.layers.emplace_back(params, name + ".layer" + std::to_string(i), config_.d_model, config_.heads, config_.qkv_dim,
                          config_.ffn_dim, init);
  }
  s.output = Linear(params, name + ".output", config_.d_model, vocab, init);
  return s;
}

TransformerDualDecoder::TransformerDualDecoder(ParameterSet& params, const ModelConfig& config, Initializer& init)
    : config_(config) {
  summary_ = make_stream(params, "tdec.summary", config.summary_vocab, init);
  template_ = make_stream(params, "tdec.template", config.template_vocab, init);
  positions_ = config.positional_encoding ? sinusoidal_encoding(config.max_decode_len, config.d_model)
                                          : Matrix::Zero(config.max_decode_len, config.d_model);
}

Var TransformerDualDecoder::run_stream(const RunContext& ctx, const Stream& s, Var memory, Index batch,
                                       Index memory_len, const std::vector<int>& flat_ids, Index steps) const {
  Tape& t = *ctx.tape;
  if (steps > positions_.rows()) throw ShapeError("decoder run longer than max_decode_len");
  Var h = gather_rows(t.param(*s.embedding), flat_ids);
  h = add(h, t.constant(positions_.topRows(steps).replicate(batch, 1)));
  h = ctx.drop(h);
  for (const auto& layer : s.layers) h = layer(ctx, h, memory, batch, steps, memory_len);
  return s.output(t, h);
}

DualLogits TransformerDualDecoder::operator()(const RunContext& ctx, const EncoderOutput& enc,
                                              const StepInputs& inputs, const std::vector<int>& lookup) const {
  const Index B = static_cast<Index>(inputs.size());
  if (B == 0) throw ShapeError("transformer decoder: empty batch");
  const Index steps = static_cast<Index>(inputs.front().size());
  std::vector<int> sids, tids;
  sids.reserve(static_cast<std::size_t>(B * steps));
  for (const auto& row : inputs) {
    if (static_cast<Index>(row.size()) != steps) throw ShapeError("transformer decoder: ragged inputs");
    for (int id : row) {
      sids.push_back(id);
      tids.push_back(mapped(lookup, id));
    }
  }
  DualLogits out;
  out.summary = run_stream(ctx, summary_, enc.context, B, enc.positions, sids, steps);
  out.template_logits = run_stream(ctx, template_, enc.context, B, enc.positions, tids, steps);
  out.batch = B;
  out.steps = steps;
  return out;
}

StepInputs TransformerDualDecoder::greedy_inputs(const Matrix& memory, Index batch, Index memory_len,
                                                 Index steps) const {
  StepInputs inputs(static_cast<std::size_t>(batch), std::vector<int>{text::kBosId});
  for (Index s = 1; s < steps; ++s) {
    Tape tape(false);
    const RunContext ctx{&tape, nullptr, 0.0};
    std::vector<int> ids;
    ids.reserve(static_cast<std::size_t>(batch * s));
    for (const auto& row : inputs) ids.insert(ids.end(), row.begin(), row.end());
    const Var logits = run_stream(ctx, summary_, tape.constant(memory), batch, memory_len, ids, s);
    for (Index b = 0; b < batch; ++b) {
      const auto last = logits.value().row(b * s + s - 1);
      Index best = 0;
      for (Index c = 1; c < last.cols(); ++c) {
        if (last(c) > last(best)) best = c;
      }
      inputs[static_cast<std::size_t>(b)].push_back(static_cast<int>(best));
    }
  }
  return inputs;
}

}  // namespace tempsum::nn

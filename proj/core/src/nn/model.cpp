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

#include "tempsum/nn/model.hpp"

#include <algorithm>
#include <set>

#include "tempsum/error.hpp"
#include "tempsum/nn/loss.hpp"
#include "tempsum/nn/ops.hpp"
#include "tempsum/protoform/catalog.hpp"
#include "tempsum/text/slots.hpp"
#include "tempsum/text/tokenize.hpp"

namespace tempsum::nn {

std::vector<int> build_template_lookup(const text::Vocab& summary_vocab, const text::Vocab& template_vocab) {
  std::set<std::string> literals;
  for (auto type : protoform::kAllSummaryTypes) {
    for (const auto& form : protoform::rule_for(type).protoforms) {
      for (const auto& w : text::tokenize(form)) {
        if (!text::is_placeholder(w)) literals.insert(w);
      }
    }
  }
  std::vector<int> lookup(static_cast<std::size_t>(summary_vocab.size()));
  for (int id = 0; id < summary_vocab.size(); ++id) {
    const auto& w = summary_vocab.token(id);
    int target = template_vocab.id(w);
    if (id > text::kUnkId && !literals.contains(w)) {
      for (auto kind : text::kAllSlotKinds) {
        const auto entries = protoform::lexicon_entries(kind);
        if (std::find(entries.begin(), entries.end(), w) != entries.end()) {
          target = template_vocab.id(text::placeholder(kind));
          break;
        }
      }
    }
    lookup[static_cast<std::size_t>(id)] = target;
  }
  return lookup;
}

std::vector<double> fit_long(std::span<const double> x_long, int length) {
  std::vector<double> out(static_cast<std::size_t>(length), 0.0);
  const std::size_t n = std::min(x_long.size(), out.size());
  std::copy(x_long.end() - static_cast<long>(n), x_long.end(), out.end() - static_cast<long>(n));
  return out;
}

Model::Model(ModelConfig config, text::Vocab summary_vocab, text::Vocab template_vocab)
    : config_(std::move(config)), summary_vocab_(std::move(summary_vocab)), template_vocab_(std::move(template_vocab)) {
  config_.validate();
  if (config_.summary_vocab != summary_vocab_.size() || config_.template_vocab != template_vocab_.size()) {
    throw ConfigError("model config vocabulary sizes do not match the vocabularies");
  }
  lookup_ = build_template_lookup(summary_vocab_, template_vocab_);
  Initializer init(config_.seed);
  switch (config_.family) {
    case Family::cnn_lstm:
      cnn_ = std::make_unique<CnnEncoder>(params_, config_, init);
      lstm_ = std::make_unique<LstmDualDecoder>(params_, config_, init);
      break;
    case Family::tst_lstm:
      tst_ = std::make_unique<TstEncoder>(params_, config_, true, init);
      lstm_ = std::make_unique<LstmDualDecoder>(params_, config_, init);
      break;
    case Family::tst_transformer:
      tst_ = std::make_unique<TstEncoder>(params_, config_, false, init);
      transformer_ = std::make_unique<TransformerDualDecoder>(params_, config_, init);
      break;
  }
}

Batch Model::make_batch(std::span<const Example* const> examples) const {
  const auto n = static_cast<Index>(examples.size());
  Batch b;
  b.x_short.resize(n, config_.short_len);
  b.x_long.resize(n, config_.long_len);
  for (Index r = 0; r < n; ++r) {
    const Example& e = *examples[static_cast<std::size_t>(r)];
    if (static_cast<int>(e.x_short.size()) != config_.short_len) {
      throw ShapeError("x_short has " + std::to_string(e.x_short.size()) + " values, model expects " +
                       std::to_string(config_.short_len));
    }
    b.x_short.row(r) = Eigen::Map<const Eigen::RowVectorXd>(e.x_short.data(), config_.short_len);
    const auto lng = fit_long(e.x_long, config_.long_len);
    b.x_long.row(r) = Eigen::Map<const Eigen::RowVectorXd>(lng.data(), config_.long_len);
    for (const auto* seq : {&e.summary, &e.template_ids}) {
      if (seq->size() < 2 || seq->front() != text::kBosId || seq->back() != text::kEosId) {
        throw MalformedSequenceError("gold sequences must be <s> ... </s>");
      }
      if (static_cast<int>(seq->size()) - 1 > config_.max_decode_len) {
        throw ShapeError("gold sequence longer than max_decode_len");
      }
    }
    b.summary_targets.emplace_back(e.summary.begin() + 1, e.summary.end());
    b.template_targets.emplace_back(e.template_ids.begin() + 1, e.template_ids.end());
  }
  return b;
}

EncoderOutput Model::encode(const RunContext& ctx, const Matrix& x_short, const Matrix& x_long) const {
  return cnn_ ? (*cnn_)(ctx, x_short, x_long) : (*tst_)(ctx, x_short, x_long);
}

LossResult Model::loss(Tape& tape, const Batch& batch, std::mt19937_64* dropout_rng, const DecodePlan* plan) {
  const Index B = batch.size();
  if (B == 0) throw ShapeError("empty batch");
  Index steps = 0;
  for (Index b = 0; b < B; ++b) {
    const auto& s = batch.summary_targets[static_cast<std::size_t>(b)];
    const auto& t = batch.template_targets[static_cast<std::size_t>(b)];
    if (s.size() != t.size()) throw AlignmentError("summary and template targets differ in length");
    steps = std::max(steps, static_cast<Index>(s.size()));
  }
  const RunContext ctx{&tape, dropout_rng, config_.dropout};
  const EncoderOutput enc = encode(ctx, batch.x_short, batch.x_long);

  LossResult result;
  DualLogits logits;
  if (lstm_) {
    logits = (*lstm_)(ctx, enc, steps, lookup_, plan ? &plan->inputs : nullptr, &result.plan.inputs);
  } else {
    result.plan.inputs = plan ? plan->inputs : transformer_->greedy_inputs(enc.context.value(), B, enc.positions, steps);
    logits = (*transformer_)(ctx, enc, result.plan.inputs, lookup_);
  }

  // m per example from the argmax template stream unless replayed.
  const auto tpl_pred = argmax_rows(logits.template_logits.value());
  result.plan.m.resize(static_cast<std::size_t>(B));
  for (Index b = 0; b < B; ++b) {
    if (plan) {
      result.plan.m[static_cast<std::size_t>(b)] = plan->m.at(static_cast<std::size_t>(b));
      continue;
    }
    const std::span<const int> pred(tpl_pred.data() + b * steps, static_cast<std::size_t>(steps));
    result.plan.m[static_cast<std::size_t>(b)] = static_cast<double>(
        count_incorrect_blanks(pred, batch.template_targets[static_cast<std::size_t>(b)], template_vocab_));
  }

  const auto rows = static_cast<std::size_t>(B * steps);
  std::vector<int> s_targets(rows, 0), t_targets(rows, 0);
  std::vector<double> s_weights(rows, 0.0), t_weights(rows, 0.0);
  const double inv_b = 1.0 / static_cast<double>(B);
  for (Index b = 0; b < B; ++b) {
    const auto& st = batch.summary_targets[static_cast<std::size_t>(b)];
    const auto& tt = batch.template_targets[static_cast<std::size_t>(b)];
    for (std::size_t t = 0; t < st.size(); ++t) {
      const auto r = static_cast<std::size_t>(b * steps) + t;
      s_targets[r] = st[t];
      t_targets[r] = tt[t];
      s_weights[r] = inv_b;
      t_weights[r] = inv_b * result.plan.m[static_cast<std::size_t>(b)];
    }
  }
  const Var ls = softmax_cross_entropy(logits.summary, s_targets, s_weights);
  const Var lt = softmax_cross_entropy(logits.template_logits, t_targets, t_weights);
  result.loss = add(ls, lt);
  result.summary_ce = ls.value()(0, 0);
  result.template_ce = lt.value()(0, 0);
  return result;
}

std::vector<Generation> Model::greedy_generate(const Matrix& x_short, const Matrix& x_long) const {
  Tape tape(false);
  const RunContext ctx{&tape, nullptr, 0.0};
  const Index B = x_short.rows();
  const EncoderOutput enc = encode(ctx, x_short, x_long);
  const Index steps = config_.max_decode_len;
  DualLogits logits;
  if (lstm_) {
    logits = (*lstm_)(ctx, enc, steps, lookup_, nullptr, nullptr);
  } else {
    const auto inputs = transformer_->greedy_inputs(enc.context.value(), B, enc.positions, steps);
    logits = (*transformer_)(ctx, enc, inputs, lookup_);
  }
  const auto s_pred = argmax_rows(logits.summary.value());
  const auto t_pred = argmax_rows(logits.template_logits.value());
  std::vector<Generation> out(static_cast<std::size_t>(B));
  for (Index b = 0; b < B; ++b) {
    auto& g = out[static_cast<std::size_t>(b)];
    for (Index t = 0; t < steps; ++t) {
      const int id = s_pred[static_cast<std::size_t>(b * steps + t)];
      if (id == text::kEosId) break;
      g.summary_ids.push_back(id);
      g.summary.push_back(summary_vocab_.token(id));
    }
    for (Index t = 0; t < steps; ++t) {
      const int id = t_pred[static_cast<std::size_t>(b * steps + t)];
      if (id == text::kEosId) break;
      g.template_ids.push_back(id);
      g.template_tokens.push_back(template_vocab_.token(id));
    }
  }
  return out;
}

Generation Model::greedy_generate(std::span<const double> x_short, std::span<const double> x_long) const {
  if (static_cast<int>(x_short.size()) != config_.short_len) {
    throw ShapeError("x_short has " + std::to_string(x_short.size()) + " values, model expects " +
                     std::to_string(config_.short_len));
  }
  Matrix s = Eigen::Map<const Matrix>(x_short.data(), 1, config_.short_len);
  const auto lng = fit_long(x_long, config_.long_len);
  Matrix l = Eigen::Map<const Matrix>(lng.data(), 1, config_.long_len);
  return greedy_generate(s, l).front();
}

}  // namespace tempsum::nn

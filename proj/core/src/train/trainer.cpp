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

#include "tempsum/train/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "tempsum/error.hpp"
#include "tempsum/nn/adam.hpp"
#include "tempsum/nn/checkpoint.hpp"

namespace tempsum::train {

TrainConfig TrainConfig::defaults(nn::Family family) {
  TrainConfig c;
  if (family == nn::Family::cnn_lstm) {
    c.batch_size = 180;
    c.epochs = 78;
  } else {
    c.batch_size = 8;
    c.epochs = 30;
  }
  return c;
}

void TrainConfig::validate() const {
  if (batch_size < 1) throw ConfigError("batch size must be at least 1");
  if (!(learning_rate > 0.0)) throw ConfigError("learning rate must be positive");
  if (clip_norm < 0.0) throw ConfigError("clip norm must be nonnegative");
}

std::vector<nn::Example> to_examples(std::span<const dataset::TrainingInstance> instances,
                                     const std::map<std::string, dataset::UserStats>& stats,
                                     std::span<const std::size_t> indices) {
  std::vector<nn::Example> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) {
    const auto& inst = instances[i];
    const auto it = stats.find(inst.user_id);
    const auto z = dataset::normalize(inst, it != stats.end() ? it->second : dataset::compute_stats(inst.x_long));
    out.push_back({z.x_short, z.x_long, inst.y_summary.ids, inst.y_template.ids});
  }
  return out;
}

std::vector<nn::Example> to_examples(std::span<const dataset::TrainingInstance> instances,
                                     const std::map<std::string, dataset::UserStats>& stats) {
  std::vector<std::size_t> all(instances.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return to_examples(instances, stats, all);
}

nn::ModelConfig model_config_for(nn::Family family, std::span<const dataset::TrainingInstance> instances,
                                 const text::Vocab& summary_vocab, const text::Vocab& template_vocab) {
  if (instances.empty()) throw ConfigError("no instances to size the model from");
  nn::ModelConfig c;
  c.family = family;
  c.short_len = static_cast<int>(instances.front().x_short.size());
  c.long_len = 0;
  c.max_decode_len = 0;
  for (const auto& inst : instances) {
    if (static_cast<int>(inst.x_short.size()) != c.short_len) throw ShapeError("instances differ in x_short length");
    c.long_len = std::max(c.long_len, static_cast<int>(inst.x_long.size()));
    c.max_decode_len = std::max(c.max_decode_len, static_cast<int>(inst.y_summary.size()) - 1);
  }
  c.summary_vocab = summary_vocab.size();
  c.template_vocab = template_vocab.size();
  return c;
}

double exact_match(const nn::Model& model, std::span<const nn::Example> examples, std::size_t batch_size) {
  if (examples.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t start = 0; start < examples.size(); start += batch_size) {
    const std::size_t n = std::min(batch_size, examples.size() - start);
    std::vector<const nn::Example*> ptrs;
    for (std::size_t i = 0; i < n; ++i) ptrs.push_back(&examples[start + i]);
    const auto batch = model.make_batch(ptrs);
    const auto gens = model.greedy_generate(batch.x_short, batch.x_long);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& gold = batch.summary_targets[i];
      hits += std::equal(gens[i].summary_ids.begin(), gens[i].summary_ids.end(), gold.begin(), gold.end() - 1) ? 1 : 0;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(examples.size());
}

TrainResult train_model(nn::Model& model, std::span<const nn::Example> train, const TrainConfig& config,
                        const std::function<void(const EpochRecord&)>& on_epoch) {
  config.validate();
  TrainResult result;
  if (config.epochs == 0 || train.empty()) return result;

  std::mt19937_64 rng(config.seed);
  nn::Adam adam(model.parameters(), {config.learning_rate, 0.9, 0.999, 1e-8, config.clip_norm});
  model.parameters().zero_grad();

  std::vector<std::size_t> order(train.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<nn::Matrix> best;
  double best_loss = std::numeric_limits<double>::infinity();

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    EpochRecord rec;
    rec.epoch = epoch;
    double blanks = 0.0;
    for (std::size_t start = 0, batch_index = 0; start < order.size(); start += config.batch_size, ++batch_index) {
      const std::size_t n = std::min(config.batch_size, order.size() - start);
      std::vector<const nn::Example*> ptrs;
      ptrs.reserve(n);
      for (std::size_t i = 0; i < n; ++i) ptrs.push_back(&train[order[start + i]]);
      const auto batch = model.make_batch(ptrs);
      nn::Tape tape;
      const auto out = model.loss(tape, batch, &rng);
      const double loss = out.loss.value()(0, 0);
      if (!std::isfinite(loss)) {
        throw DivergenceError("non-finite loss at epoch " + std::to_string(epoch) + ", batch " +
                              std::to_string(batch_index) + ", seed " + std::to_string(config.seed));
      }
      tape.backward(out.loss);
      adam.step();
      const double w = static_cast<double>(n) / static_cast<double>(train.size());
      rec.loss += loss * w;
      rec.summary_ce += out.summary_ce * w;
      rec.template_ce += out.template_ce * w;
      for (double m : out.plan.m) blanks += m;
    }
    rec.mean_blanks = blanks / static_cast<double>(train.size());
    if (config.stop_at_train_accuracy) rec.train_accuracy = exact_match(model, train);
    result.curve.push_back(rec);
    if (config.checkpoint_path) nn::save_checkpoint(*config.checkpoint_path, model);
    if (on_epoch) on_epoch(rec);

    if (rec.train_accuracy && *rec.train_accuracy >= *config.stop_at_train_accuracy) {
      result.kept_epoch = epoch;
      result.stopped_early = true;
      return result;
    }
    if (rec.loss < best_loss) {
      best_loss = rec.loss;
      result.kept_epoch = epoch;
      best.clear();
      for (const auto* p : model.parameters().all()) best.push_back(p->value);
    }
  }
  auto& params = model.parameters().all();
  for (std::size_t i = 0; i < params.size(); ++i) params[i]->value = best[i];
  return result;
}

}  // namespace tempsum::train

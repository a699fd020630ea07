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
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tempsum/dataset/builder.hpp"
#include "tempsum/nn/model.hpp"

namespace tempsum::train {

struct TrainConfig {
  double learning_rate = 1e-4;
  std::size_t batch_size = 180;
  std::size_t epochs = 78;
  std::uint64_t seed = 7;
  double clip_norm = 5.0;
  /// Stop once greedy train-set exact match reaches this value (checked per epoch).
  std::optional<double> stop_at_train_accuracy;
  /// Written after every epoch when set.
  std::optional<std::filesystem::path> checkpoint_path;

  /// Batch size and epochs per family: 180 x 78 (CNN-LSTM), 8 x 30 (TST).
  static TrainConfig defaults(nn::Family family);
  void validate() const;
};

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double loss = 0.0;
  double summary_ce = 0.0;
  double template_ce = 0.0;
  double mean_blanks = 0.0;
  std::optional<double> train_accuracy;
};

struct TrainResult {
  std::vector<EpochRecord> curve;
  /// Epoch whose weights the model holds on return (0 = untouched).
  std::size_t kept_epoch = 0;
  bool stopped_early = false;
};

/// Seeded epoch-shuffled mini-batch Adam on dual_loss. Returns with the
/// lowest-train-loss weights, or the weights that met stop_at_train_accuracy.
/// Throws DivergenceError naming the batch and seed on a non-finite loss.
TrainResult train_model(nn::Model& model, std::span<const nn::Example> train, const TrainConfig& config,
                        const std::function<void(const EpochRecord&)>& on_epoch = {});

/// Normalized network examples for instances with per-user statistics.
std::vector<nn::Example> to_examples(std::span<const dataset::TrainingInstance> instances,
                                     const std::map<std::string, dataset::UserStats>& stats);
std::vector<nn::Example> to_examples(std::span<const dataset::TrainingInstance> instances,
                                     const std::map<std::string, dataset::UserStats>& stats,
                                     std::span<const std::size_t> indices);

/// Full-size config of `family` with shapes taken from the instances.
nn::ModelConfig model_config_for(nn::Family family, std::span<const dataset::TrainingInstance> instances,
                                 const text::Vocab& summary_vocab, const text::Vocab& template_vocab);

/// Greedy exact-match accuracy over examples.
double exact_match(const nn::Model& model, std::span<const nn::Example> examples, std::size_t batch_size = 64);

}  // namespace tempsum::train

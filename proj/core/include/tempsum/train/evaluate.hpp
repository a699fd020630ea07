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

#include <span>
#include <string>
#include <vector>

#include "tempsum/nn/model.hpp"
#include "tempsum/protoform/catalog.hpp"

namespace tempsum::train {

struct EvalReport {
  protoform::SummaryType summary_type = protoform::SummaryType::standard_eval_tw;
  std::string model;
  double exact_match = 0.0;
  double token_accuracy = 0.0;
  double bleu = 0.0;
  std::size_t n_test = 0;
  std::size_t n_train = 0;
  std::vector<double> loss_curve;
};

struct Prediction {
  std::vector<std::string> predicted;
  std::vector<std::string> gold;
};

/// Position-wise match rate over the longer of the two sequences.
double token_accuracy(std::span<const std::string> predicted, std::span<const std::string> gold);

/// Greedy decoding over the test examples. Token accuracy is averaged per
/// instance; BLEU is corpus-level. Throws DomainError on an empty test set.
EvalReport evaluate_model(const nn::Model& model, std::span<const nn::Example> test, protoform::SummaryType type,
                          std::vector<Prediction>* predictions = nullptr, std::size_t batch_size = 64);

}  // namespace tempsum::train

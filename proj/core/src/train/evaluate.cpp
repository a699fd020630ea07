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

#include "tempsum/train/evaluate.hpp"

#include <algorithm>

#include "tempsum/error.hpp"
#include "tempsum/train/bleu.hpp"

namespace tempsum::train {

double token_accuracy(std::span<const std::string> predicted, std::span<const std::string> gold) {
  const std::size_t n = std::max(predicted.size(), gold.size());
  if (n == 0) return 1.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < std::min(predicted.size(), gold.size()); ++i) hits += predicted[i] == gold[i] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(n);
}

EvalReport evaluate_model(const nn::Model& model, std::span<const nn::Example> test, protoform::SummaryType type,
                          std::vector<Prediction>* predictions, std::size_t batch_size) {
  if (test.empty()) throw DomainError("evaluation needs a nonempty test set");
  EvalReport r;
  r.summary_type = type;
  r.model = std::string(nn::to_string(model.config().family));
  r.n_test = test.size();
  std::vector<Sentence> cands, refs;
  std::size_t exact = 0;
  double tok = 0.0;
  for (std::size_t start = 0; start < test.size(); start += batch_size) {
    const std::size_t n = std::min(batch_size, test.size() - start);
    std::vector<const nn::Example*> ptrs;
    for (std::size_t i = 0; i < n; ++i) ptrs.push_back(&test[start + i]);
    const auto batch = model.make_batch(ptrs);
    const auto gens = model.greedy_generate(batch.x_short, batch.x_long);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& ids = batch.summary_targets[i];
      Sentence gold;
      for (std::size_t k = 0; k + 1 < ids.size(); ++k) gold.push_back(model.summary_vocab().token(ids[k]));
      exact += gens[i].summary == gold ? 1 : 0;
      tok += token_accuracy(gens[i].summary, gold);
      if (predictions) predictions->push_back({gens[i].summary, gold});
      cands.push_back(gens[i].summary);
      refs.push_back(std::move(gold));
    }
  }
  const double n = static_cast<double>(test.size());
  r.exact_match = static_cast<double>(exact) / n;
  r.token_accuracy = tok / n;
  r.bleu = bleu_score(cands, refs);
  return r;
}

}  // namespace tempsum::train

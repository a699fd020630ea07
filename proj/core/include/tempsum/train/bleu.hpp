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

#include <array>
#include <span>
#include <string>
#include <vector>

namespace tempsum::train {

using Sentence = std::vector<std::string>;

inline constexpr int kBleuOrder = 4;

/// Clipped n-gram matches and candidate n-gram totals per order (index n-1),
/// summed over a corpus.
struct NgramStats {
  std::array<std::size_t, kBleuOrder> matches{};
  std::array<std::size_t, kBleuOrder> totals{};
  std::size_t candidate_length = 0;
  std::size_t reference_length = 0;
};

NgramStats ngram_statistics(std::span<const Sentence> candidates, std::span<const Sentence> references);

/// Clipped n-gram precision of one sentence pair; 0 when the candidate has no
/// n-grams of that order.
double modified_precision(const Sentence& candidate, const Sentence& reference, int n);

/// Corpus BLEU-4, single reference, uniform weights, brevity penalty.
/// Orders where the candidates hold no n-gram are left out of the mean; an
/// order with zero matches over t n-grams contributes 1 / (t + 1).
/// Throws DomainError on an empty corpus or mismatched list lengths.
double bleu_score(std::span<const Sentence> candidates, std::span<const Sentence> references);

/// Score from precomputed statistics.
double bleu_from_stats(const NgramStats& stats);

}  // namespace tempsum::train

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

#include "tempsum/train/bleu.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "tempsum/error.hpp"

namespace tempsum::train {

namespace {

using Counts = std::map<std::vector<std::string>, std::size_t>;

Counts ngrams(const Sentence& s, int n) {
  Counts c;
  const auto len = static_cast<int>(s.size());
  for (int i = 0; i + n <= len; ++i) ++c[std::vector<std::string>(s.begin() + i, s.begin() + i + n)];
  return c;
}

std::size_t clipped(const Counts& cand, const Counts& ref) {
  std::size_t m = 0;
  for (const auto& [g, k] : cand) {
    const auto it = ref.find(g);
    if (it != ref.end()) m += std::min(k, it->second);
  }
  return m;
}

}  // namespace

NgramStats ngram_statistics(std::span<const Sentence> candidates, std::span<const Sentence> references) {
  if (candidates.size() != references.size()) {
    throw DomainError("bleu: " + std::to_string(candidates.size()) + " candidates but " +
                      std::to_string(references.size()) + " references");
  }
  NgramStats st;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    st.candidate_length += candidates[i].size();
    st.reference_length += references[i].size();
    for (int n = 1; n <= kBleuOrder; ++n) {
      const auto c = ngrams(candidates[i], n);
      st.matches[static_cast<std::size_t>(n - 1)] += clipped(c, ngrams(references[i], n));
      const auto len = candidates[i].size();
      st.totals[static_cast<std::size_t>(n - 1)] += len >= static_cast<std::size_t>(n) ? len - static_cast<std::size_t>(n) + 1 : 0;
    }
  }
  return st;
}

double modified_precision(const Sentence& candidate, const Sentence& reference, int n) {
  const auto c = ngrams(candidate, n);
  std::size_t total = 0;
  for (const auto& [g, k] : c) total += k;
  if (total == 0) return 0.0;
  return static_cast<double>(clipped(c, ngrams(reference, n))) / static_cast<double>(total);
}

double bleu_from_stats(const NgramStats& st) {
  if (st.candidate_length == 0) return 0.0;
  double log_sum = 0.0;
  int orders = 0;
  for (std::size_t n = 0; n < st.totals.size(); ++n) {
    if (st.totals[n] == 0) continue;
    const double p = st.matches[n] > 0 ? static_cast<double>(st.matches[n]) / static_cast<double>(st.totals[n])
                                       : 1.0 / static_cast<double>(st.totals[n] + 1);
    log_sum += std::log(p);
    ++orders;
  }
  const double c = static_cast<double>(st.candidate_length);
  const double r = static_cast<double>(st.reference_length);
  const double bp = c > r ? 1.0 : std::exp(1.0 - r / c);
  return bp * std::exp(log_sum / orders);
}

double bleu_score(std::span<const Sentence> candidates, std::span<const Sentence> references) {
  if (candidates.empty()) throw DomainError("bleu: empty corpus");
  return bleu_from_stats(ngram_statistics(candidates, references));
}

}  // namespace tempsum::train

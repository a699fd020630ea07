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

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace tempsum::testing {

using Sentence = std::vector<std::string>;

/// Occurrences of `gram` in `s`, by direct comparison at every offset.
inline std::size_t occurrences(const Sentence& s, const Sentence& gram) {
  if (gram.size() > s.size()) return 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i + gram.size() <= s.size(); ++i) {
    if (std::equal(gram.begin(), gram.end(), s.begin() + static_cast<long>(i))) ++count;
  }
  return count;
}

/// Clipped matches of order n: each candidate position counts toward its
/// n-gram's clip only the first time that n-gram is seen.
inline std::size_t brute_clipped_matches(const Sentence& cand, const Sentence& ref, std::size_t n) {
  std::size_t total = 0;
  for (std::size_t i = 0; i + n <= cand.size(); ++i) {
    const Sentence gram(cand.begin() + static_cast<long>(i), cand.begin() + static_cast<long>(i + n));
    bool seen = false;
    for (std::size_t j = 0; j < i && !seen; ++j) {
      seen = std::equal(gram.begin(), gram.end(), cand.begin() + static_cast<long>(j));
    }
    if (!seen) total += std::min(occurrences(cand, gram), occurrences(ref, gram));
  }
  return total;
}

/// Corpus BLEU-4 with the same conventions as the library: orders without
/// candidate n-grams are skipped and zero-match orders score 1 / (t + 1).
inline double brute_bleu(const std::vector<Sentence>& cands, const std::vector<Sentence>& refs) {
  double c = 0.0, r = 0.0;
  double log_sum = 0.0;
  int orders = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    double matches = 0.0, totals = 0.0;
    for (std::size_t k = 0; k < cands.size(); ++k) {
      matches += static_cast<double>(brute_clipped_matches(cands[k], refs[k], n));
      if (cands[k].size() >= n) totals += static_cast<double>(cands[k].size() - n + 1);
    }
    if (totals == 0.0) continue;
    log_sum += std::log(matches > 0.0 ? matches / totals : 1.0 / (totals + 1.0));
    ++orders;
  }
  for (std::size_t k = 0; k < cands.size(); ++k) {
    c += static_cast<double>(cands[k].size());
    r += static_cast<double>(refs[k].size());
  }
  if (c == 0.0) return 0.0;
  const double bp = c > r ? 1.0 : std::exp(1.0 - r / c);
  return bp * std::exp(log_sum / orders);
}

/// Random sentence over a small alphabet so n-grams repeat.
inline Sentence random_sentence(std::mt19937_64& rng, std::size_t min_len = 1, std::size_t max_len = 12) {
  static const char* alphabet[] = {"the", "week", "high", "low", "your", "intake", "was", "."};
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<std::size_t> word(0, 7);
  Sentence s(len(rng));
  for (auto& w : s) w = alphabet[word(rng)];
  return s;
}

}  // namespace tempsum::testing

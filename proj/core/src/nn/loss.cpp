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

#include "tempsum/nn/loss.hpp"

#include <cmath>

#include "tempsum/error.hpp"
#include "tempsum/nn/ops.hpp"
#include "tempsum/text/slots.hpp"

namespace tempsum::nn {

std::size_t count_incorrect_blanks(std::span<const std::string> predicted, std::span<const std::string> gold) {
  std::size_t end = 0;
  while (end < predicted.size() && predicted[end] != text::kEosToken) ++end;
  std::size_t m = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (!text::is_placeholder(gold[i])) continue;
    if (i >= end || predicted[i] != gold[i]) ++m;
  }
  return m;
}

std::size_t count_incorrect_blanks(std::span<const int> predicted, std::span<const int> gold,
                                   const text::Vocab& template_vocab) {
  std::size_t end = 0;
  while (end < predicted.size() && predicted[end] != text::kEosId) ++end;
  std::size_t m = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (!text::is_placeholder(template_vocab.token(gold[i]))) continue;
    if (i >= end || predicted[i] != gold[i]) ++m;
  }
  return m;
}

double sequence_cross_entropy(const Matrix& logits, std::span<const int> gold) {
  if (static_cast<Index>(gold.size()) > logits.rows()) {
    throw AlignmentError("gold sequence of length " + std::to_string(gold.size()) + " exceeds " +
                         std::to_string(logits.rows()) + " logit rows");
  }
  double total = 0.0;
  for (std::size_t r = 0; r < gold.size(); ++r) {
    const auto row = logits.row(static_cast<Index>(r));
    if (gold[r] < 0 || gold[r] >= logits.cols()) throw AlignmentError("gold id outside the vocabulary");
    const double mx = row.maxCoeff();
    total += mx + std::log((row.array() - mx).exp().sum()) - row(gold[r]);
  }
  return total;
}

double dual_loss(const Matrix& summary_logits, const Matrix& template_logits, std::span<const int> gold_summary,
                 std::span<const int> gold_template, double m) {
  if (summary_logits.rows() != template_logits.rows()) {
    throw AlignmentError("summary and template logits have different position counts");
  }
  if (m < 0.0) throw DomainError("m must be nonnegative");
  return sequence_cross_entropy(summary_logits, gold_summary) + m * sequence_cross_entropy(template_logits, gold_template);
}

double dual_loss(const Matrix& summary_logits, const Matrix& template_logits, std::span<const int> gold_summary,
                 std::span<const int> gold_template, const text::Vocab& template_vocab) {
  const auto predicted = argmax_rows(template_logits);
  const auto m = count_incorrect_blanks(predicted, gold_template, template_vocab);
  return dual_loss(summary_logits, template_logits, gold_summary, gold_template, static_cast<double>(m));
}

}  // namespace tempsum::nn

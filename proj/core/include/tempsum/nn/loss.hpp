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

#include "tempsum/nn/tape.hpp"
#include "tempsum/text/vocab.hpp"

namespace tempsum::nn {

/// Gold placeholder positions where the prediction differs or is missing.
/// Both sequences are content tokens (no <s>); the prediction is cut at </s>.
std::size_t count_incorrect_blanks(std::span<const std::string> predicted, std::span<const std::string> gold);
/// Same over template ids.
std::size_t count_incorrect_blanks(std::span<const int> predicted, std::span<const int> gold,
                                   const text::Vocab& template_vocab);

/// Sum of per-position summary CE plus m times the summed template CE.
/// Row r of each logits matrix predicts gold[r]; rows past the gold length are
/// masked. Throws AlignmentError when row counts differ or a gold sequence is
/// longer than its logits.
double dual_loss(const Matrix& summary_logits, const Matrix& template_logits, std::span<const int> gold_summary,
                 std::span<const int> gold_template, double m);
/// As above with m counted from the argmax template predictions.
double dual_loss(const Matrix& summary_logits, const Matrix& template_logits, std::span<const int> gold_summary,
                 std::span<const int> gold_template, const text::Vocab& template_vocab);

/// Summed cross entropy of `gold` under the rows of `logits`.
double sequence_cross_entropy(const Matrix& logits, std::span<const int> gold);

}  // namespace tempsum::nn

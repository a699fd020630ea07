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

#include <random>
#include <vector>

#include "tempsum/nn/tape.hpp"

namespace tempsum::nn {

Var matmul(Var a, Var b);
Var add(Var a, Var b);
Var sub(Var a, Var b);
Var mul(Var a, Var b);
/// a (n x c) plus a 1 x c row broadcast over rows.
Var add_row(Var a, Var row);
Var scale(Var a, double s);
Var tanh(Var a);
Var sigmoid(Var a);
Var relu(Var a);

Var concat_cols(const std::vector<Var>& parts);
Var slice_cols(Var a, Index start, Index count);
Var concat_rows(const std::vector<Var>& parts);
Var slice_rows(Var a, Index start, Index count);
/// Row-major reinterpretation; the element count must match.
Var reshape(Var a, Index rows, Index cols);
/// 1 x c row repeated n times.
Var broadcast_rows(Var row, Index n);
/// Rows of `table` picked by `ids` (embedding lookup).
Var gather_rows(Var table, const std::vector<int>& ids);

/// Inverted dropout. Identity when `rng` is null or p == 0.
Var dropout(Var a, double p, std::mt19937_64* rng);
/// Row-wise normalization with 1 x c gain and bias.
Var layer_norm(Var a, Var gamma, Var beta, double eps = 1e-5);

/// Sequences are stacked as (batch * length) x channels.
/// Unfolds each sequence into (batch * out_len) x (kernel * channels) with zero
/// padding, where out_len = length + 2 * padding - kernel + 1.
Var im2col(Var x, Index batch, Index length, Index kernel, Index padding);
/// Max over windows of `kernel` rows per sequence; out_len = (length - kernel) / stride + 1.
Var max_pool(Var x, Index batch, Index length, Index kernel, Index stride);

Var sum(Var a);
/// Sum over rows of weights[r] * (-log softmax(logits[r])[targets[r]]), as 1 x 1.
Var softmax_cross_entropy(Var logits, const std::vector<int>& targets, const std::vector<double>& weights);

Matrix softmax_rows(const Matrix& logits);
/// Index of the row maximum; the first one on ties.
std::vector<int> argmax_rows(const Matrix& m);

}  // namespace tempsum::nn

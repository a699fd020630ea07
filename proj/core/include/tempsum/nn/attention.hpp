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

#include <vector>

#include "tempsum/nn/tape.hpp"

namespace tempsum::nn {

struct AttentionSpec {
  Index batch = 1;
  Index query_len = 1;
  Index key_len = 1;
  Index heads = 1;
  Index head_dim = 1;
  /// Non-overlapping chunk size for self-attention; 0 attends over everything.
  Index window = 0;
  /// Position i attends to positions <= i only.
  bool causal = false;
};

/// 1 where query i may attend to key j, else 0 (key_len x key_len for windowed
/// self-attention). A shorter final chunk attends only among itself.
Matrix attention_mask(Index query_len, Index key_len, Index window, bool causal);

/// Row-stochastic weights for one sequence and one head; q is query_len x
/// head_dim and k is key_len x head_dim.
Matrix attention_probabilities(const Matrix& q, const Matrix& k, Index window, bool causal);

/// Scaled dot-product attention over stacked sequences. q is
/// (batch * query_len) x (heads * head_dim), k and v are (batch * key_len) x
/// (heads * head_dim). Head h uses columns [h * head_dim, (h + 1) * head_dim).
Var multihead_attention(Var q, Var k, Var v, const AttentionSpec& spec);

}  // namespace tempsum::nn

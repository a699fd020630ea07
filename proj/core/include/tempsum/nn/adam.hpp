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

struct AdamConfig {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  /// Global gradient-norm clip; 0 disables it.
  double clip_norm = 5.0;
};

class Adam {
 public:
  Adam(ParameterSet& params, AdamConfig config);

  /// Applies one update from the accumulated gradients and clears them.
  /// Returns the gradient norm before clipping.
  double step();
  long steps() const noexcept { return t_; }

 private:
  ParameterSet* params_;
  AdamConfig config_;
  std::vector<Matrix> m_;
  std::vector<Matrix> v_;
  long t_ = 0;
};

double gradient_norm(const ParameterSet& params);

}  // namespace tempsum::nn
